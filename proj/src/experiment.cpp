#include "dissem/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "dissem/bounds.hpp"
#include "dissem/errors.hpp"

namespace dissem {

std::size_t bin_of(const Ratio& r) {
  if (r.num < r.den) throw std::logic_error("ratio below 1");
  std::size_t bin = 0;
  for (std::size_t b = 1; b < kBins; ++b) {
    if (r.num * 10 >= r.den * static_cast<std::size_t>(kBinLowerTenths[b])) bin = b;
  }
  return bin;
}

std::array<std::size_t, kBins> to_percent(const std::array<std::size_t, kBins>& counts) {
  std::array<std::size_t, kBins> out{};
  const std::size_t total = std::accumulate(counts.begin(), counts.end(), std::size_t{0});
  if (total == 0) return out;
  std::array<std::size_t, kBins> rem{};
  std::size_t assigned = 0;
  for (std::size_t b = 0; b < kBins; ++b) {
    out[b] = counts[b] * 100 / total;
    rem[b] = counts[b] * 100 % total;
    assigned += out[b];
  }
  std::array<std::size_t, kBins> order{};
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rem[a] > rem[b]; });
  for (std::size_t i = 0; assigned < 100; ++i, ++assigned) ++out[order[i]];
  return out;
}

ExperimentReport run_experiment(const GenParams& p, const RoundOptions& opts) {
  ExperimentReport rep;
  rep.params = p;
  rep.strategy = opts.strategy;
  const auto corpus = generate_corpus(p);
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& inst = corpus[i];
    try {
      ExperimentRow row;
      row.index = i;
      row.rounds = required_rounds(inst);
      auto o = opts;
      o.seed = opts.seed + i;
      const auto s = schedule(inst, row.rounds, o);
      row.tau = s.tau_total;
      row.dmax = dmax(inst);
      row.ratio = ratio(row.tau, row.dmax);
      row.fallback = std::any_of(s.fallback_rounds.begin(), s.fallback_rounds.end(), [](bool b) { return b; });
      ++rep.counts[bin_of(row.ratio)];
      rep.rows.push_back(row);
    } catch (const Error& e) {
      rep.failures.push_back({i, e.what()});
    }
  }
  rep.percent = to_percent(rep.counts);
  return rep;
}

std::string format_table(const ExperimentReport& r) {
  if (r.rows.empty()) return "no instances\n";
  const std::array<const char*, kBins> labels = {"[1,1.2)", "[1.2,1.4)", "[1.4,1.6)",
                                                 "[1.6,1.8)", "[1.8,2.0)", "[2.0,inf)"};
  char buf[64];
  std::string top = "Range         ";
  std::string bottom = "Occurrence, % ";
  for (std::size_t b = 0; b < kBins; ++b) {
    std::snprintf(buf, sizeof buf, "| %-10s", labels[b]);
    top += buf;
    std::snprintf(buf, sizeof buf, "| %-10zu", r.percent[b]);
    bottom += buf;
  }
  return top + "\n" + bottom + "\n";
}

std::string format_csv(const ExperimentReport& r) {
  std::string out = "index,rounds,tau,dmax,ratio,fallback\n";
  char buf[128];
  for (const auto& row : r.rows) {
    std::snprintf(buf, sizeof buf, "%zu,%zu,%zu,%zu,%.6f,%d\n", row.index + 1, row.rounds, row.tau, row.dmax,
                  row.ratio.value(), row.fallback ? 1 : 0);
    out += buf;
  }
  return out;
}

}  // namespace dissem
