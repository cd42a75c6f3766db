#include "upgmc/engine.hpp"

#include <algorithm>
#include <chrono>
#include <stdexcept>
#include <utility>

namespace upgmc {

namespace {

void validate_points(std::span<const Point> points) {
  if (points.size() < 2) {
    throw std::invalid_argument("cluster: need at least 2 points");
  }
  const std::size_t dim = points.front().size();
  if (dim == 0) {
    throw std::invalid_argument("cluster: points must have dimension >= 1");
  }
  for (const Point& p : points) {
    if (p.size() != dim) {
      throw std::invalid_argument("cluster: dimension mismatch between points");
    }
  }
}

template <typename Engine>
ClusterResult finish_run(Engine& engine, std::size_t n,
                         std::chrono::steady_clock::time_point start) {
  Dendrogram dendrogram{static_cast<std::uint32_t>(n), {}};
  dendrogram.records.reserve(n - 1);
  while (!engine.done()) {
    dendrogram.records.push_back(engine.step());
  }
  EngineStats stats = engine.stats();
  stats.wall_time = std::chrono::duration_cast<std::chrono::nanoseconds>(
      std::chrono::steady_clock::now() - start);
  return ClusterResult{std::move(dendrogram), stats};
}

}  // namespace

ClusterRegistry::ClusterRegistry(std::span<const Point> points) {
  validate_points(points);
  live_.reserve(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    live_.push_back(Cluster{static_cast<ClusterId>(i), points[i], 1});
  }
}

std::size_t ClusterRegistry::index_of(ClusterId id) const {
  const auto it = std::lower_bound(live_.begin(), live_.end(), id,
                                   [](const Cluster& c, ClusterId key) { return c.id < key; });
  if (it == live_.end() || it->id != id) {
    throw std::invalid_argument("ClusterRegistry: id is not live");
  }
  return static_cast<std::size_t>(it - live_.begin());
}

const Cluster& ClusterRegistry::merge(ClusterId left, ClusterId right, ClusterId new_id) {
  if (!live_.empty() && new_id <= live_.back().id) {
    throw std::invalid_argument("ClusterRegistry: new id must exceed all live ids");
  }
  const std::size_t left_pos = index_of(left);
  const std::size_t right_pos = index_of(right);
  Cluster merged = centroid_merge(live_[left_pos], live_[right_pos], new_id);
  live_.erase(live_.begin() + static_cast<std::ptrdiff_t>(std::max(left_pos, right_pos)));
  live_.erase(live_.begin() + static_cast<std::ptrdiff_t>(std::min(left_pos, right_pos)));
  live_.push_back(std::move(merged));
  return live_.back();
}

NaiveEngine::NaiveEngine(std::span<const Point> points)
    : registry_(points), point_count_(static_cast<std::uint32_t>(points.size())) {}

MergeRecord NaiveEngine::step() {
  const std::vector<Cluster>& live = registry_.live();
  if (live.size() < 2) {
    throw std::logic_error("step: clustering already complete");
  }

  // Recompute the whole shrinking distance matrix and take its minimum.
  DistanceEntry best{};
  bool have_best = false;
  for (std::size_t i = 0; i + 1 < live.size(); ++i) {
    for (std::size_t j = i + 1; j < live.size(); ++j) {
      ++stats_.distance_computations;
      const DistanceEntry candidate{live[i].id, live[j].id,
                                    euclidean_distance(live[i].centroid, live[j].centroid)};
      if (!have_best || closer(candidate, best)) {
        best = candidate;
        have_best = true;
      }
    }
  }

  ++steps_taken_;
  const ClusterId new_id = point_count_ + steps_taken_ - 1;
  const Cluster& merged = registry_.merge(best.id_m, best.id_s, new_id);
  return MergeRecord{steps_taken_, best.id_m, best.id_s, best.d, new_id, merged.size};
}

HashedEngine::HashedEngine(std::span<const Point> points, std::uint32_t slot_count, SlotMode mode)
    : registry_(points),
      distances_(slot_count, mode, &stats_),
      point_count_(static_cast<std::uint32_t>(points.size())) {
  const std::vector<Cluster>& live = registry_.live();
  for (std::size_t i = 0; i + 1 < live.size(); ++i) {
    for (std::size_t j = i + 1; j < live.size(); ++j) {
      ++stats_.distance_computations;
      distances_.insert({live[i].id, live[j].id,
                         euclidean_distance(live[i].centroid, live[j].centroid)});
    }
  }
}

MergeRecord HashedEngine::step() {
  const std::vector<Cluster>& live = registry_.live();
  if (live.size() < 2) {
    throw std::logic_error("step: clustering already complete");
  }

  const DistanceEntry best = distances_.min_entry();

  // Sweep out the left id against every other live id (this removes the
  // merged pair's own entry), then the right id against the rest.
  std::vector<ClusterId> others;
  others.reserve(live.size() - 1);
  for (const Cluster& c : live) {
    if (c.id != best.id_m) others.push_back(c.id);
  }
  distances_.remove_cluster(best.id_m, others);
  std::erase(others, best.id_s);
  distances_.remove_cluster(best.id_s, others);

  ++steps_taken_;
  const ClusterId new_id = point_count_ + steps_taken_ - 1;
  const Cluster& merged = registry_.merge(best.id_m, best.id_s, new_id);

  // The merged cluster pairs with each remaining live cluster; its id is the
  // largest issued so far, so it is always the second key component.
  for (const Cluster& c : registry_.live()) {
    if (c.id == new_id) continue;
    ++stats_.distance_computations;
    distances_.insert({c.id, new_id, euclidean_distance(c.centroid, merged.centroid)});
  }

  return MergeRecord{steps_taken_, best.id_m, best.id_s, best.d, new_id, merged.size};
}

ClusterResult cluster_naive(std::span<const Point> points) {
  const auto start = std::chrono::steady_clock::now();
  NaiveEngine engine(points);
  return finish_run(engine, points.size(), start);
}

ClusterResult cluster_hashed(std::span<const Point> points, std::uint32_t slot_count, SlotMode mode) {
  const auto start = std::chrono::steady_clock::now();
  HashedEngine engine(points, slot_count, mode);
  return finish_run(engine, points.size(), start);
}

ClusterResult cluster(std::span<const Point> points, const EngineKind& kind) {
  return std::visit(
      [&](const auto& k) -> ClusterResult {
        if constexpr (std::is_same_v<std::decay_t<decltype(k)>, NaiveKind>) {
          return cluster_naive(points);
        } else {
          return cluster_hashed(points, k.slot_count, k.mode);
        }
      },
      kind);
}

}  // namespace upgmc
