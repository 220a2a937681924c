#pragma once
// Batch comparison of scheduled transmissions against the dmax lower bound.

#include <array>
#include <string>
#include <vector>

#include "dissem/generator.hpp"
#include "dissem/multiround.hpp"

namespace dissem {

inline constexpr std::size_t kBins = 6;
/// Lower edges of [1,1.2), [1.2,1.4), ..., [1.8,2.0), [2.0,inf), in tenths.
inline constexpr std::array<int, kBins> kBinLowerTenths = {10, 12, 14, 16, 18, 20};

struct ExperimentRow {
  std::size_t index = 0;
  std::size_t rounds = 0;
  std::size_t tau = 0;
  std::size_t dmax = 0;
  Ratio ratio;
  bool fallback = false;
};

struct ExperimentFailure {
  std::size_t index = 0;
  std::string message;
};

struct ExperimentReport {
  GenParams params;
  Strategy strategy = Strategy::exact;
  std::vector<ExperimentRow> rows;
  std::vector<ExperimentFailure> failures;
  std::array<std::size_t, kBins> counts{};
  /// integer percentages summing to 100 (largest remainder); all zero without rows
  std::array<std::size_t, kBins> percent{};
};

/// Bin of a ratio >= 1; ratios below 1 are a bug and throw std::logic_error.
std::size_t bin_of(const Ratio& r);

/// Rounds counts to integer percentages that sum to exactly 100.
std::array<std::size_t, kBins> to_percent(const std::array<std::size_t, kBins>& counts);

/// Generates the corpus, schedules each instance in the minimum number of
/// rounds and bins tau/dmax. Per-instance errors are recorded, not thrown.
ExperimentReport run_experiment(const GenParams& p, const RoundOptions& opts = {});

/// "Range" / "Occurrence, %" table, or a "no instances" line.
std::string format_table(const ExperimentReport& r);
std::string format_csv(const ExperimentReport& r);

}  // namespace dissem
