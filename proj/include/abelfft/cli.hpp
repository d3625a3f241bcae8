#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "abelfft/group.hpp"

namespace abelfft {

/// Exit codes shared by every subcommand.
enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitUsage = 2 };

/// Groups above this size are refused by the benchmark.
inline constexpr std::size_t kBenchMaxSize = std::size_t{1} << 22;
/// The quadratic reference transform is skipped above this size.
inline constexpr std::size_t kBenchNaiveLimit = 4096;

struct BenchResult {
  std::size_t size = 0;
  double fft_median_seconds = 0.0;
  std::optional<double> naive_median_seconds;
  /// Sum of the transformed values; identical across runs with one seed.
  Complex checksum{};

  std::optional<double> speedup() const {
    if (!naive_median_seconds || fft_median_seconds <= 0.0) return std::nullopt;
    return *naive_median_seconds / fft_median_seconds;
  }
};

/// Median wall time over `reps` runs of fft_forward and (when the group is
/// small enough) dft_naive on one seeded random function.
BenchResult run_benchmark(const Group& g, std::size_t reps, std::uint64_t seed);

/// Entry point of the command-line tool; args excludes the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace abelfft
