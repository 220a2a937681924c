#include <doctest.h>

#include <algorithm>

#include "dissem/bounds.hpp"
#include "dissem/errors.hpp"
#include "dissem/one_round.hpp"
#include "helpers.hpp"

using namespace dissem;

namespace {

SideInfoGraph cycle_graph(std::size_t n) {
  std::vector<std::uint64_t> out(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    out[i] |= std::uint64_t{1} << ((i + 1) % n);
    out[i] |= std::uint64_t{1} << ((i + n - 1) % n);
  }
  return {n, out};
}

SideInfoGraph complete_graph(std::size_t n) {
  std::vector<std::uint64_t> out(n, (std::uint64_t{1} << n) - 1);
  return {n, out};
}

// Bipartite instance with `t` transmitters; receiver of x_s hears the transmitters in hears[s].
DisseminationInstance multi_transmitter(std::size_t t, const SideInfoGraph& h,
                                        const std::vector<std::vector<std::size_t>>& hears) {
  const std::size_t n = h.vertex_count();
  std::vector<Edge> edges;
  std::vector<SymbolSet> p(t + n), r(t + n);
  for (std::size_t i = 0; i < t; ++i) p[i] = SymbolSet::full(n);
  for (std::size_t s = 0; s < n; ++s) {
    p[t + s] = SymbolSet(h.out_mask(s));
    r[t + s].insert(s);
    for (auto tx : hears[s]) edges.emplace_back(tx, t + s);
  }
  return {2, n, DirectedNetwork(t + n, edges), p, r};
}

}  // namespace

TEST_SUITE("bounds") {
  TEST_CASE("trivial graphs") {
    for (std::size_t n = 1; n <= 6; ++n) {
      CHECK(minrank2(complete_graph(n)) == 1);
      CHECK(minrank2(SideInfoGraph(n)) == n);
      CHECK(independence_number(complete_graph(n)) == 1);
      CHECK(clique_cover_number(complete_graph(n)) == 1);
      CHECK(independence_number(SideInfoGraph(n)) == n);
      CHECK(clique_cover_number(SideInfoGraph(n)) == n);
    }
    CHECK(minrank2(SideInfoGraph(0)) == 0);
  }

  TEST_CASE("pentagon separates alpha from clique cover") {
    const auto c5 = cycle_graph(5);
    CHECK(independence_number(c5) == 2);
    CHECK(minrank2(c5) == 3);
    CHECK(oracle::minrank2(c5) == 3);
    CHECK(clique_cover_number(c5) == 3);
    CHECK(oracle::clique_cover(c5) == 3);
    const auto ind = max_independent_set(c5);
    std::uint64_t mask = 0;
    for (auto v : ind) mask |= std::uint64_t{1} << v;
    CHECK(ind.size() == 2);
    CHECK(oracle::independent(c5, mask));
  }

  TEST_CASE("minrank2 matches exhaustive search on directed graphs") {
    Rng rng(31);
    for (int t = 0; t < 150; ++t) {
      const std::size_t n = 1 + uniform_below(rng, 6);
      const auto h = testgen::random_graph(n, rng, 0.45);
      CHECK(minrank2(h) == oracle::minrank2(h));
    }
  }

  TEST_CASE("alpha and clique cover match exhaustive search with valid witnesses") {
    Rng rng(37);
    for (int t = 0; t < 150; ++t) {
      const std::size_t n = 1 + uniform_below(rng, 8);
      const auto h = testgen::random_graph(n, rng, 0.5, coin(rng, 0.5));
      CHECK(independence_number(h) == oracle::alpha(h));
      const auto cover = min_clique_cover(h);
      CHECK(cover.size() == oracle::clique_cover(h));
      std::vector<int> seen(n, 0);
      for (const auto& c : cover) {
        for (auto a : c) {
          ++seen[a];
          for (auto b : c) {
            if (a != b) CHECK((h.has_edge(a, b) && h.has_edge(b, a)));
          }
        }
      }
      CHECK(std::all_of(seen.begin(), seen.end(), [](int x) { return x == 1; }));
    }
  }

  TEST_CASE("minrank2 never grows when edges are added") {
    Rng rng(41);
    for (int t = 0; t < 60; ++t) {
      const std::size_t n = 2 + uniform_below(rng, 5);
      auto h = testgen::random_graph(n, rng, 0.3);
      const auto before = minrank2(h);
      std::size_t i = uniform_below(rng, n), j = uniform_below(rng, n);
      if (i == j) j = (j + 1) % n;
      CHECK(minrank2(h.with_edge(i, j)) <= before);
    }
  }

  TEST_CASE("caps") {
    CHECK_THROWS_AS(minrank2(SideInfoGraph(11)), CapExceeded);
    CHECK(minrank2(SideInfoGraph(11), 11) == 11);
    CHECK_THROWS_AS(independence_number(SideInfoGraph(21)), CapExceeded);
    CHECK_THROWS_AS(clique_cover_number(SideInfoGraph(21)), CapExceeded);
  }

  TEST_CASE("dmax") {
    DirectedNetwork net(5, {{0, 2}, {0, 3}, {1, 2}, {1, 3}, {1, 4}});
    const DisseminationInstance fig1(2, 3, net, {{0, 1}, {1, 2}, {0}, {1}, {0, 2}}, {{}, {}, {1, 2}, {0, 2}, {1}});
    CHECK(dmax(fig1) == 2);
    CHECK(lower_bound(fig1) == 2);
    const DisseminationInstance alone(2, 2, DirectedNetwork(1, {}), {{0, 1}}, {{}});
    CHECK(dmax(alone) == 0);
    const DisseminationInstance path(2, 1, DirectedNetwork(3, {{0, 1}, {1, 2}}), {{0}, {}, {}}, {{}, {0}, {0}});
    CHECK(dmax(path) == 2);
    const DisseminationInstance cut(2, 1, DirectedNetwork(2, {}), {{0}, {}}, {{}, {0}});
    CHECK_THROWS_AS(dmax(cut), InfeasibleInstance);
  }

  TEST_CASE("bipartite lower bound is minrank2 and empty side information gives n") {
    Rng rng(43);
    const auto empty = multi_transmitter(1, SideInfoGraph(4), {{0}, {0}, {0}, {0}});
    CHECK(lower_bound(empty) == 4);
    for (int t = 0; t < 40; ++t) {
      const auto inst = testgen::random_star_instance(1 + uniform_below(rng, 5), rng);
      CHECK(lower_bound(inst) == minrank2(side_info_graph(inst)));
    }
  }

  TEST_CASE("single transmitter partition bound is minrank2") {
    const auto c5 = cycle_graph(5);
    const auto inst = multi_transmitter(1, c5, {{0}, {0}, {0}, {0}, {0}});
    const auto pb = partition_upper_bound(inst);
    CHECK(pb.minrank_sum == 3);
    CHECK(pb.clique_cover_sum == 3);
    CHECK(pb.partitions == 1);
    CHECK(pb.assignment == std::vector<std::size_t>(5, 0));
  }

  TEST_CASE("exclusive transmitters force the partition") {
    // receivers 1,2 hear only t1; receivers 3,4,5 hear only t2
    const auto h = complete_graph(5);
    const auto inst = multi_transmitter(2, h, {{0}, {0}, {1}, {1}, {1}});
    const auto pb = partition_upper_bound(inst);
    CHECK(pb.minrank_sum == 2);
    CHECK(pb.partitions == 1);
    CHECK(pb.assignment == std::vector<std::size_t>{0, 0, 1, 1, 1});
  }

  TEST_CASE("uncovered receivers and non-bipartite instances") {
    const auto inst = multi_transmitter(1, SideInfoGraph(2), {{0}, {}});
    CHECK_THROWS_AS(partition_upper_bound(inst), ReceiverUncovered);
    const DisseminationInstance path(2, 1, DirectedNetwork(3, {{0, 1}, {1, 2}}), {{0}, {}, {}}, {{}, {0}, {0}});
    CHECK_THROWS_AS(partition_upper_bound(path), InputError);
    const auto report = compute_bounds(path);
    CHECK_FALSE(report.bipartite);
    CHECK(report.dmax == 2u);
    CHECK_FALSE(report.minrank2.has_value());
  }

  TEST_CASE("two transmitters: lower bound <= optimum <= partition bound") {
    Rng rng(47);
    for (int t = 0; t < 200; ++t) {
      const auto h = testgen::random_graph(4, rng, 0.45);
      std::vector<std::vector<std::size_t>> hears(4);
      for (auto& s : hears) {
        const auto pick = 1 + uniform_below(rng, 3);
        if (pick & 1u) s.push_back(0);
        if (pick & 2u) s.push_back(1);
      }
      const auto inst = multi_transmitter(2, h, hears);
      const auto pb = partition_upper_bound(inst);
      const auto lb = lower_bound(inst);
      CHECK(pb.minrank_sum >= lb);
      CHECK(pb.clique_cover_sum >= pb.minrank_sum);
      const auto opt = solve_exact(inst).tau;
      CHECK(lb <= opt);
      CHECK(opt <= pb.minrank_sum);
    }
  }

  TEST_CASE("report on a bipartite instance") {
    const auto inst = multi_transmitter(1, cycle_graph(5), {{0}, {0}, {0}, {0}, {0}});
    const auto r = compute_bounds(inst);
    CHECK(r.bipartite);
    CHECK(r.alpha == 2u);
    CHECK(r.minrank2 == 3u);
    CHECK(r.clique_cover == 3u);
    CHECK(r.dmax == 1u);
    CHECK(r.lower() == 3);
  }
}
