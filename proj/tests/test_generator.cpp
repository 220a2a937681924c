#include <doctest.h>

#include <numeric>

#include "dissem/bounds.hpp"
#include "dissem/errors.hpp"
#include "dissem/experiment.hpp"
#include "dissem/generator.hpp"
#include "helpers.hpp"

using namespace dissem;

TEST_SUITE("generator") {
  TEST_CASE("networks have the requested index") {
    Rng rng(83);
    for (std::size_t d = 1; d <= 3; ++d) {
      for (int t = 0; t < 10; ++t) {
        const auto net = random_network(4, d, rng);
        CHECK(oracle::max_eccentricity(4, net.edges()) == d);
      }
    }
    CHECK_THROWS_AS(random_network(4, 4, rng), InputError);
    CHECK_THROWS_AS(random_network(6, 5, rng, 50), GenerationFailed);
    CHECK(random_network(1, 1, rng).edges().empty());
  }

  TEST_CASE("instances are feasible and request their complement") {
    GenParams p;
    p.count = 40;
    p.seed = 5;
    for (const auto& inst : generate_corpus(p)) {
      CHECK(inst.node_count() == 4);
      CHECK(inst.symbol_count() == 4);
      CHECK(inst.feasible());
      CHECK(inst.has_requests());
      CHECK(inst.covers_all_symbols());
      CHECK(solvability_index(inst.net()) == 2u);
      for (std::size_t l = 0; l < 4; ++l) CHECK((inst.possess(l) | inst.request(l)) == SymbolSet::full(4));
    }
  }

  TEST_CASE("corpora are reproducible") {
    GenParams p;
    p.count = 5;
    p.seed = 11;
    CHECK(generate_corpus(p) == generate_corpus(p));
    auto other = p;
    other.seed = 12;
    CHECK_FALSE(generate_corpus(p) == generate_corpus(other));
  }

  TEST_CASE("single node has nothing to request") {
    GenParams p;
    p.nodes = 1;
    p.diameter = 1;
    p.retry_budget = 20;
    Rng rng(1);
    CHECK_THROWS_AS(random_instance(p, rng), GenerationFailed);
  }

  TEST_CASE("bins and percentages") {
    CHECK(bin_of(Ratio{1, 1}) == 0);
    CHECK(bin_of(Ratio{6, 5}) == 1);
    CHECK(bin_of(Ratio{7, 5}) == 2);
    CHECK(bin_of(Ratio{3, 2}) == 2);
    CHECK(bin_of(Ratio{9, 5}) == 4);
    CHECK(bin_of(Ratio{2, 1}) == 5);
    CHECK(bin_of(Ratio{7, 1}) == 5);
    CHECK_THROWS_AS(bin_of(Ratio{1, 2}), std::logic_error);
    const auto pc = to_percent({1, 1, 1, 0, 0, 0});
    CHECK(std::accumulate(pc.begin(), pc.end(), std::size_t{0}) == 100);
    CHECK(pc[0] == 34);
    CHECK(to_percent({}) == std::array<std::size_t, kBins>{});
    CHECK(to_percent({0, 0, 0, 0, 0, 7})[5] == 100);
  }

  TEST_CASE("small experiment") {
    GenParams p;
    p.count = 8;
    p.seed = 3;
    const auto r = run_experiment(p);
    CHECK(r.rows.size() + r.failures.size() == 8);
    CHECK(std::accumulate(r.counts.begin(), r.counts.end(), std::size_t{0}) == r.rows.size());
    CHECK(std::accumulate(r.percent.begin(), r.percent.end(), std::size_t{0}) == 100);
    for (const auto& row : r.rows) {
      CHECK(row.rounds == 2);
      CHECK(row.tau >= row.dmax);
      CHECK(row.ratio == ratio(row.tau, row.dmax));
    }
    const auto table = format_table(r);
    CHECK(table.find("Range") != std::string::npos);
    CHECK(table.find("Occurrence, %") != std::string::npos);
    CHECK(format_csv(r).find("ratio") != std::string::npos);
  }

  TEST_CASE("empty experiment") {
    GenParams p;
    p.count = 0;
    const auto r = run_experiment(p);
    CHECK(r.rows.empty());
    CHECK(format_table(r).find("no instances") != std::string::npos);
  }
}
