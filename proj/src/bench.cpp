#include "upgmc/bench.hpp"

#include <map>
#include <ostream>
#include <stdexcept>
#include <utility>

#include "upgmc/csv.hpp"
#include "upgmc/engine.hpp"

namespace upgmc {

namespace {

// SplitMix64 (Steele, Lea & Flood; as published with the xoshiro family).
// Chosen for the dataset stream because its output is fixed by the seed
// alone, with no library or platform dependence.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  // Uniform in [0,1): the top 53 bits scaled by 2^-53.
  double next_unit() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
};

void validate(const BenchConfig& config) {
  if (config.n_values.empty()) throw std::invalid_argument("bench: no n values");
  for (const std::uint32_t n : config.n_values) {
    if (n < 2) throw std::invalid_argument("bench: n must be at least 2");
  }
  if (config.l_values.empty()) throw std::invalid_argument("bench: no slot counts");
  for (const SlotSpec& spec : config.l_values) {
    if (spec.kind == SlotSpec::Kind::Fixed && spec.value == 0) {
      throw std::invalid_argument("bench: slot count must be positive");
    }
  }
  if (config.dim == 0) throw std::invalid_argument("bench: dimension must be at least 1");
  if (config.modes.empty()) throw std::invalid_argument("bench: no slot modes");
  if (config.seeds.empty()) throw std::invalid_argument("bench: no seeds");
  if (config.repetitions == 0) throw std::invalid_argument("bench: repetitions must be at least 1");
  if (!config.run_naive && !config.run_hashed) {
    throw std::invalid_argument("bench: no engines selected");
  }
}

class ChecksumLedger {
 public:
  // Records the checksum for (n, seed) on first sight, then insists every
  // later run of the same dataset agrees, whatever the engine or l.
  void check(std::uint32_t n, std::uint64_t seed, std::uint64_t checksum) {
    const auto [it, inserted] = seen_.emplace(std::make_pair(n, seed), checksum);
    if (!inserted && it->second != checksum) {
      throw std::logic_error("bench: dendrogram checksum mismatch across runs");
    }
  }

 private:
  std::map<std::pair<std::uint32_t, std::uint64_t>, std::uint64_t> seen_;
};

void verify_counter(const BenchRow& row) {
  const std::uint64_t expected =
      row.engine == "naive" ? naive_distance_count(row.n) : hashed_distance_count(row.n);
  if (row.distance_computations != expected) {
    throw std::logic_error("bench: distance counter deviates from the closed form");
  }
}

}  // namespace

std::uint32_t next_prime(std::uint32_t x) {
  auto is_prime = [](std::uint32_t v) {
    if (v < 2) return false;
    for (std::uint32_t f = 2; static_cast<std::uint64_t>(f) * f <= v; ++f) {
      if (v % f == 0) return false;
    }
    return true;
  };
  std::uint32_t candidate = x + 1;
  while (!is_prime(candidate)) ++candidate;
  return candidate;
}

std::uint32_t SlotSpec::resolve(std::uint32_t n) const {
  switch (kind) {
    case Kind::Fixed:
      return value;
    case Kind::Auto:
      return n;
    case Kind::QuarterN:
      return (n + 3) / 4;
    case Kind::FourN:
      return 4 * n;
    case Kind::NextPrime:
      return next_prime(n);
  }
  throw std::logic_error("SlotSpec: unknown kind");
}

std::vector<SlotSpec> BenchConfig::default_l_sweep() {
  return {{SlotSpec::Kind::QuarterN, 0},
          {SlotSpec::Kind::Auto, 0},
          {SlotSpec::Kind::FourN, 0},
          {SlotSpec::Kind::NextPrime, 0}};
}

std::vector<Point> generate_dataset(std::uint32_t n, std::uint32_t d, std::uint64_t seed) {
  if (n < 2 || d < 1) {
    throw std::invalid_argument("generate_dataset: need n >= 2 and d >= 1");
  }
  SplitMix64 rng{seed};
  std::vector<Point> points(n, Point(d));
  for (Point& p : points) {
    for (double& coord : p) coord = rng.next_unit();
  }
  return points;
}

std::uint64_t naive_distance_count(std::uint64_t n) { return (n + 1) * n * (n - 1) / 6; }

std::uint64_t hashed_distance_count(std::uint64_t n) { return (n - 1) * (n - 1); }

std::vector<BenchRow> run_bench(const BenchConfig& config) {
  validate(config);

  std::vector<BenchRow> rows;
  ChecksumLedger checksums;

  const auto emit = [&](BenchRow row) {
    verify_counter(row);
    checksums.check(row.n, row.seed, row.checksum);
    rows.push_back(std::move(row));
  };

  if (config.run_naive) {
    for (const std::uint32_t n : config.n_values) {
      for (const std::uint64_t seed : config.seeds) {
        const std::vector<Point> points = generate_dataset(n, config.dim, seed);
        (void)cluster_naive(points);  // warm-up
        for (std::uint32_t rep = 1; rep <= config.repetitions; ++rep) {
          const ClusterResult result = cluster_naive(points);
          emit(BenchRow{"naive", n, std::nullopt, std::nullopt, config.dim, seed, rep,
                        static_cast<std::uint64_t>(result.stats.wall_time.count()),
                        result.stats.distance_computations, result.stats.slot_probes,
                        result.stats.scan_comparisons, dendrogram_checksum(result.dendrogram)});
        }
      }
    }
  }

  if (config.run_hashed) {
    for (const std::uint32_t n : config.n_values) {
      for (const SlotSpec& spec : config.l_values) {
        const std::uint32_t l = spec.resolve(n);
        for (const SlotMode mode : config.modes) {
          for (const std::uint64_t seed : config.seeds) {
            const std::vector<Point> points = generate_dataset(n, config.dim, seed);
            (void)cluster_hashed(points, l, mode);  // warm-up
            for (std::uint32_t rep = 1; rep <= config.repetitions; ++rep) {
              const ClusterResult result = cluster_hashed(points, l, mode);
              emit(BenchRow{"hashed", n, l, mode, config.dim, seed, rep,
                            static_cast<std::uint64_t>(result.stats.wall_time.count()),
                            result.stats.distance_computations, result.stats.slot_probes,
                            result.stats.scan_comparisons,
                            dendrogram_checksum(result.dendrogram)});
            }
          }
        }
      }
    }
  }

  return rows;
}

void write_bench_csv(std::ostream& out, std::span<const BenchRow> rows) {
  out << "engine,n,l,mode,d,seed,repetition,wall_time_ns,"
         "distance_computations,slot_probes,scan_comparisons,dendrogram_checksum\n";
  for (const BenchRow& row : rows) {
    out << csv_field(row.engine) << ',' << row.n << ',';
    if (row.l) out << *row.l;
    out << ',';
    if (row.mode) out << to_string(*row.mode);
    out << ',' << row.d << ',' << row.seed << ',' << row.repetition << ',' << row.wall_time_ns
        << ',' << row.distance_computations << ',' << row.slot_probes << ','
        << row.scan_comparisons << ',' << row.checksum << '\n';
  }
}

}  // namespace upgmc
