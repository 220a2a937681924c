#include <doctest.h>

#include "dissem/errors.hpp"
#include "dissem/star_algebra.hpp"
#include "helpers.hpp"

using namespace dissem;

namespace {

StarEntry fx(std::uint32_t v, std::uint32_t q = 5) { return StarEntry::fixed(FieldElement(v, q)); }

StarMatrix example_family() { return StarMatrix::parse(2, {{"*", "0", "0"}, {"0", "0", "*"}, {"0", "*", "0"}}); }

StarMatrix example_product() { return StarMatrix::parse(2, {{"*", "0", "*"}, {"*", "*", "*"}, {"0", "*", "*"}}); }

}  // namespace

TEST_SUITE("star_algebra") {
  TEST_CASE("addition and multiplication tables") {
    const auto s = StarEntry::star();
    CHECK(star_add(fx(2), fx(4)) == fx(1));
    CHECK(star_add(fx(2), s).is_star());
    CHECK(star_add(s, fx(0)).is_star());
    CHECK(star_add(s, s).is_star());
    CHECK(star_mul(fx(0), s) == fx(0));
    CHECK(star_mul(s, fx(0)) == fx(0));
    CHECK(star_mul(fx(3), s).is_star());
    CHECK(star_mul(s, fx(3)).is_star());
    CHECK(star_mul(s, s).is_star());
    CHECK(star_mul(fx(2), fx(3)) == fx(1));
    CHECK_THROWS_AS(s.value(), InputError);
  }

  TEST_CASE("gamma keeps one unit row per * column in the first rows") {
    const auto block = StarMatrix::parse(2, {{"*", "0", "*", "*", "0"},
                                             {"*", "0", "*", "*", "0"},
                                             {"*", "0", "*", "*", "0"},
                                             {"*", "0", "*", "*", "0"},
                                             {"*", "0", "*", "*", "0"}});
    const auto want = FieldMatrix::from_rows(2, 5, {{1, 0, 0, 0, 0},
                                                    {0, 0, 1, 0, 0},
                                                    {0, 0, 0, 1, 0},
                                                    {0, 0, 0, 0, 0},
                                                    {0, 0, 0, 0, 0}});
    CHECK(gamma(block) == want);
    CHECK(gamma(StarMatrix(2, 3, 3)).is_zero());
  }

  TEST_CASE("field matrix times family") {
    const auto b = StarMatrix::from_field(FieldMatrix::from_rows(2, 3, {{1, 1, 0}, {1, 1, 1}, {0, 1, 1}}));
    CHECK(star_mul(b, example_family()) == example_product());
  }

  TEST_CASE("integer matrix times family collapses nonzero integers") {
    const auto b = IntMatrix::from_rows({{1, 2, 0}, {4, 5, 6}, {0, 7, 8}});
    CHECK(int_mul_star(b, example_family()) == example_product());
    // over GF(2) the literal entries 2, 4, 6, 8 would vanish; the collapse keeps them
    CHECK(int_mul_star(IntMatrix::from_rows({{2}}), StarMatrix::parse(2, {{"*"}})).is_star(0, 0));
  }

  TEST_CASE("integer matrix algebra") {
    const auto a = IntMatrix::from_rows({{1, 1}, {0, 1}});
    CHECK(a * a == IntMatrix::from_rows({{1, 2}, {0, 1}}));
    CHECK(a.boolean_product(a) == a);
    CHECK(tensor(IntMatrix::identity(2), IntMatrix::all_ones(1, 2)) == IntMatrix::from_rows({{1, 1, 0, 0}, {0, 0, 1, 1}}));
    CHECK(IntMatrix::diag({1, 0}) == IntMatrix::from_rows({{1, 0}, {0, 0}}));
    CHECK_FALSE(a.all_positive());
    CHECK(IntMatrix::all_ones(2, 2).all_positive());
  }

  TEST_CASE("expand_rows repeats each compact row") {
    const auto compact = StarMatrix::parse(2, {{"*", "0"}, {"0", "*"}});
    const auto full = expand_rows(compact, 3);
    CHECK(full.rows() == 6);
    CHECK(full.is_star(2, 0));
    CHECK(full.is_star(3, 1));
    CHECK_FALSE(full.is_star(3, 0));
    CHECK(full == tensor(compact, StarMatrix::from_int(2, IntMatrix::all_ones(3, 1))));
  }

  TEST_CASE("maxrank equals exhaustive substitution") {
    Rng rng(8);
    for (int t = 0; t < 200; ++t) {
      const auto a = testgen::random_pattern(1 + uniform_below(rng, 4), 1 + uniform_below(rng, 5), 12, rng);
      const auto mr = maxrank(a);
      CHECK(mr == oracle::maxrank_exhaustive(a));
      const auto c = maxrank_completion(a);
      CHECK(member(a, c));
      CHECK(rank(c) == mr);
    }
    CHECK_THROWS_AS(maxrank(StarMatrix::parse(2, {{"1", "*"}})), InputError);
  }

  TEST_CASE("sampling stays in the family and is seeded") {
    const auto a = StarMatrix::parse(7, {{"*", "3", "0"}, {"0", "*", "*"}});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      const auto m = sample(a, seed);
      CHECK(member(a, m));
      CHECK(m == sample(a, seed));
    }
    CHECK_FALSE(member(a, FieldMatrix::from_rows(7, 3, {{1, 2, 0}, {0, 1, 1}})));
  }

  TEST_CASE("counting and row helpers") {
    const auto a = example_product();
    CHECK(a.star_count() == 7);
    CHECK(a.star_count_in_row(2) == 2);
    CHECK(a.star_columns(0) == std::vector<std::size_t>{0, 2});
    CHECK(a.zero_fixed());
    CHECK(a.row_range(1, 2).star_count() == 3);
    CHECK_THROWS_AS(StarMatrix::parse(2, {{"*", "2"}}), InputError);
  }
}
