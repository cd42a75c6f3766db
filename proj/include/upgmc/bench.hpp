#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "upgmc/core.hpp"
#include "upgmc/hashed_distance_set.hpp"

namespace upgmc {

/// Smallest prime strictly greater than x.
[[nodiscard]] std::uint32_t next_prime(std::uint32_t x);

/// Slot-count choice for one benchmark combination; everything except Fixed
/// is resolved against the combination's n.
struct SlotSpec {
  enum class Kind { Fixed, Auto, QuarterN, FourN, NextPrime };

  Kind kind = Kind::Auto;
  std::uint32_t value = 0;  // used by Fixed only

  static SlotSpec fixed(std::uint32_t l) { return {Kind::Fixed, l}; }
  static SlotSpec auto_n() { return {Kind::Auto, 0}; }

  [[nodiscard]] std::uint32_t resolve(std::uint32_t n) const;
};

/// Deterministic benchmark dataset: n points with coordinates i.i.d. uniform
/// in [0,1), drawn from a SplitMix64 stream whose state starts at `seed`.
/// The same arguments produce bit-identical points on every platform.
[[nodiscard]] std::vector<Point> generate_dataset(std::uint32_t n, std::uint32_t d, std::uint64_t seed);

struct BenchConfig {
  std::vector<std::uint32_t> n_values;
  std::vector<SlotSpec> l_values = default_l_sweep();
  std::uint32_t dim = 16;
  std::vector<SlotMode> modes{SlotMode::FirstSorted};
  std::vector<std::uint64_t> seeds{1};
  std::uint32_t repetitions = 1;
  bool run_naive = true;
  bool run_hashed = true;

  /// l in {ceil(n/4), n, 4n, next_prime(n)}.
  static std::vector<SlotSpec> default_l_sweep();
};

struct BenchRow {
  std::string engine;  // "naive" | "hashed"
  std::uint32_t n = 0;
  std::optional<std::uint32_t> l;  // absent for naive
  std::optional<SlotMode> mode;    // absent for naive
  std::uint32_t d = 0;
  std::uint64_t seed = 0;
  std::uint32_t repetition = 0;  // 1-based
  std::uint64_t wall_time_ns = 0;
  std::uint64_t distance_computations = 0;
  std::uint64_t slot_probes = 0;
  std::uint64_t scan_comparisons = 0;
  std::uint64_t checksum = 0;  // dendrogram checksum, equal across engines and l
};

/// Closed-form distance-computation counts: C(n+1,3) for the naive engine,
/// (n-1)^2 for the hashed one.
[[nodiscard]] std::uint64_t naive_distance_count(std::uint64_t n);
[[nodiscard]] std::uint64_t hashed_distance_count(std::uint64_t n);

/// Runs every (engine, n, l, mode, seed) combination sequentially: one
/// untimed warm-up, then `repetitions` timed runs, one row each, in a
/// deterministic order. Every row's distance counter is checked against the
/// closed form and every dendrogram checksum against the other runs of the
/// same (n, seed) before the row is emitted; a mismatch throws
/// std::logic_error. Invalid configs throw std::invalid_argument.
[[nodiscard]] std::vector<BenchRow> run_bench(const BenchConfig& config);

/// Writes rows as CSV: header first, RFC 4180 quoting, one line per row.
void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows);

}  // namespace upgmc
