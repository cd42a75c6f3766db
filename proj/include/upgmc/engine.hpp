#pragma once

#include <cstdint>
#include <span>
#include <variant>
#include <vector>

#include "upgmc/core.hpp"
#include "upgmc/hashed_distance_set.hpp"

namespace upgmc {

/// Engine selector.
struct NaiveKind {};
struct HashedKind {
  std::uint32_t slot_count = 1;
  SlotMode mode = SlotMode::FirstSorted;
};
using EngineKind = std::variant<NaiveKind, HashedKind>;

/// Registry of live clusters, kept in ascending id order. Both engines read
/// centroids from a registry built the same way, so they see identical
/// floating-point values and their merge distances match bitwise.
class ClusterRegistry {
 public:
  /// Points become singleton clusters with ids 0..n-1.
  explicit ClusterRegistry(std::span<const Point> points);

  [[nodiscard]] const std::vector<Cluster>& live() const { return live_; }

  /// Replaces the pair with their centroid merge; new_id must exceed every
  /// live id so the ascending order is preserved.
  const Cluster& merge(ClusterId left, ClusterId right, ClusterId new_id);

 private:
  [[nodiscard]] std::size_t index_of(ClusterId id) const;

  std::vector<Cluster> live_;
};

/// Baseline engine: recomputes every live pairwise distance on every step,
/// the shrinking-matrix approach.
class NaiveEngine {
 public:
  explicit NaiveEngine(std::span<const Point> points);

  [[nodiscard]] bool done() const { return registry_.live().size() < 2; }
  MergeRecord step();
  [[nodiscard]] const std::vector<Cluster>& live_clusters() const { return registry_.live(); }
  [[nodiscard]] const EngineStats& stats() const { return stats_; }

 private:
  EngineStats stats_;
  ClusterRegistry registry_;
  std::uint32_t point_count_;
  std::uint32_t steps_taken_ = 0;
};

/// Incremental engine: keeps all live pairwise distances in a
/// HashedDistanceSet and only computes the distances a merge introduces.
class HashedEngine {
 public:
  HashedEngine(std::span<const Point> points, std::uint32_t slot_count,
               SlotMode mode = SlotMode::FirstSorted);

  // The distance set points at stats_, so the engine is pinned in place.
  HashedEngine(const HashedEngine&) = delete;
  HashedEngine& operator=(const HashedEngine&) = delete;

  [[nodiscard]] bool done() const { return registry_.live().size() < 2; }
  MergeRecord step();
  [[nodiscard]] const std::vector<Cluster>& live_clusters() const { return registry_.live(); }
  [[nodiscard]] const EngineStats& stats() const { return stats_; }
  [[nodiscard]] const HashedDistanceSet& distance_set() const { return distances_; }

 private:
  EngineStats stats_;  // must precede distances_, which points at it
  ClusterRegistry registry_;
  HashedDistanceSet distances_;
  std::uint32_t point_count_;
  std::uint32_t steps_taken_ = 0;
};

struct ClusterResult {
  Dendrogram dendrogram;
  EngineStats stats;
};

/// Full clustering run with the baseline engine. Requires n >= 2 points of
/// uniform dimension d >= 1.
[[nodiscard]] ClusterResult cluster_naive(std::span<const Point> points);

/// Full clustering run with the incremental engine; slot_count must be >= 1.
[[nodiscard]] ClusterResult cluster_hashed(std::span<const Point> points, std::uint32_t slot_count,
                                           SlotMode mode = SlotMode::FirstSorted);

/// Dispatches on the engine kind.
[[nodiscard]] ClusterResult cluster(std::span<const Point> points, const EngineKind& kind);

}  // namespace upgmc
