#pragma once

#include <chrono>
#include <cstdint>
#include <span>
#include <vector>

namespace upgmc {

/// Cluster identifier. Original points occupy ids 0..n-1; the cluster created
/// at merge step t (t = 1..n-1) gets id n+t-1. Ids are never reused.
using ClusterId = std::uint32_t;

/// A point in d-dimensional Euclidean space (d >= 1).
using Point = std::vector<double>;

/// Live cluster state between merges.
struct Cluster {
  ClusterId id = 0;
  Point centroid;
  std::uint32_t size = 0;  // number of original member points
};

/// One stored pairwise distance: the centroid distance between clusters
/// id_m and id_s, with id_m < id_s.
struct DistanceEntry {
  ClusterId id_m = 0;
  ClusterId id_s = 0;
  double d = 0.0;

  friend bool operator==(const DistanceEntry&, const DistanceEntry&) = default;
};

/// Shared merge order of both engines: smaller distance first, ties broken
/// by lexicographically smaller (id_m, id_s).
[[nodiscard]] constexpr bool closer(const DistanceEntry& a, const DistanceEntry& b) {
  if (a.d != b.d) return a.d < b.d;
  if (a.id_m != b.id_m) return a.id_m < b.id_m;
  return a.id_s < b.id_s;
}

/// One merge step of a clustering run.
struct MergeRecord {
  std::uint32_t step = 0;  // 1..n-1
  ClusterId left = 0;      // left < right
  ClusterId right = 0;
  double distance = 0.0;
  ClusterId new_id = 0;  // n + step - 1
  std::uint32_t new_size = 0;

  friend bool operator==(const MergeRecord&, const MergeRecord&) = default;
};

/// Full clustering output: exactly n-1 merges in step order.
struct Dendrogram {
  std::uint32_t n = 0;
  std::vector<MergeRecord> records;
};

/// Exact operation counters plus the wall time of one engine run. Counters
/// are incremented once per primitive event, never estimated.
struct EngineStats {
  std::uint64_t distance_computations = 0;
  std::uint64_t slot_probes = 0;       // entries inspected during slot searches
  std::uint64_t scan_comparisons = 0;  // entries visited by minimum scans
  std::chrono::nanoseconds wall_time{0};
};

/// Euclidean distance between two points of equal dimension.
[[nodiscard]] double euclidean_distance(std::span<const double> p, std::span<const double> q);

/// Merges two clusters into one with the given id. The merged centroid is the
/// size-weighted mean of the operands, i.e. the mass center of all member
/// points.
[[nodiscard]] Cluster centroid_merge(const Cluster& a, const Cluster& b, ClusterId new_id);

/// FNV-1a hash of the merge-pair sequence. Platform-independent: equal pair
/// sequences hash equal everywhere.
[[nodiscard]] std::uint64_t dendrogram_checksum(const Dendrogram& dendrogram);

}  // namespace upgmc
