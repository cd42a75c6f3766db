#include "upgmc/selftest.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <ostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "upgmc/bench.hpp"
#include "upgmc/core.hpp"
#include "upgmc/engine.hpp"
#include "upgmc/hashed_distance_set.hpp"

namespace upgmc::selftest {

namespace {

// Reference UPGMC that tracks explicit member lists and recomputes every
// centroid as a plain mean over the original points on every step. It shares
// no state or arithmetic path with the engines, so it can catch a bug in
// either of them.
std::vector<MergeRecord> reference_upgmc(const std::vector<Point>& points, bool corrupt_tie_break) {
  struct Node {
    ClusterId id;
    std::vector<std::size_t> members;
  };

  const std::size_t dim = points.front().size();
  std::vector<Node> nodes;
  for (std::size_t i = 0; i < points.size(); ++i) {
    nodes.push_back({static_cast<ClusterId>(i), {i}});
  }

  const auto mean_of = [&](const Node& node) {
    Point mean(dim, 0.0);
    for (const std::size_t idx : node.members) {
      for (std::size_t c = 0; c < dim; ++c) mean[c] += points[idx][c];
    }
    for (double& c : mean) c /= static_cast<double>(node.members.size());
    return mean;
  };

  std::vector<MergeRecord> records;
  ClusterId next_id = static_cast<ClusterId>(points.size());
  std::uint32_t step = 0;

  while (nodes.size() > 1) {
    std::vector<Point> centroids;
    centroids.reserve(nodes.size());
    for (const Node& node : nodes) centroids.push_back(mean_of(node));

    std::size_t best_i = 0, best_j = 1;
    double best_d = 0.0;
    bool have_best = false;
    for (std::size_t i = 0; i + 1 < nodes.size(); ++i) {
      for (std::size_t j = i + 1; j < nodes.size(); ++j) {
        double sum = 0.0;
        for (std::size_t c = 0; c < dim; ++c) {
          const double diff = centroids[i][c] - centroids[j][c];
          sum += diff * diff;
        }
        const double d = std::sqrt(sum);
        bool better;
        if (!have_best) {
          better = true;
        } else if (d != best_d) {
          better = d < best_d;
        } else {
          // Tie on distance: the shared rule is the smaller pair wins. The
          // corrupted variant prefers the larger pair instead.
          better = corrupt_tie_break;
        }
        if (better) {
          best_i = i;
          best_j = j;
          best_d = d;
          have_best = true;
        }
      }
    }

    ++step;
    Node merged{next_id++, nodes[best_i].members};
    merged.members.insert(merged.members.end(), nodes[best_j].members.begin(),
                          nodes[best_j].members.end());
    records.push_back(MergeRecord{step, nodes[best_i].id, nodes[best_j].id, best_d, merged.id,
                                  static_cast<std::uint32_t>(merged.members.size())});
    nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(best_j));
    nodes.erase(nodes.begin() + static_cast<std::ptrdiff_t>(best_i));
    nodes.push_back(std::move(merged));
  }
  return records;
}

struct Reporter {
  std::ostream& out;
  int checks = 0;
  int failures = 0;

  void pass(const std::string& name, const std::string& detail) {
    ++checks;
    out << "[ ok ] " << name << ": " << detail << "\n";
  }

  void fail(const std::string& name, const std::string& detail) {
    ++checks;
    ++failures;
    out << "[FAIL] " << name << ": " << detail << "\n";
  }
};

void check_counter_formulas(Reporter& report) {
  for (std::uint32_t n = 2; n <= 12; ++n) {
    const std::vector<Point> points = generate_dataset(n, 3, 100 + n);
    const ClusterResult naive = cluster_naive(points);
    if (naive.stats.distance_computations != naive_distance_count(n)) {
      report.fail("naive-count-formula",
                  "n=" + std::to_string(n) + " computed " +
                      std::to_string(naive.stats.distance_computations) + ", expected C(n+1,3) = " +
                      std::to_string(naive_distance_count(n)));
      return;
    }
  }
  report.pass("naive-count-formula", "distance computations equal C(n+1,3) for n=2..12");
}

void check_hashed_formulas(Reporter& report) {
  for (std::uint32_t n = 2; n <= 12; ++n) {
    const std::vector<Point> points = generate_dataset(n, 3, 200 + n);
    for (const std::uint32_t l : {1u, 5u, n}) {
      const ClusterResult hashed = cluster_hashed(points, l);
      if (hashed.stats.distance_computations != hashed_distance_count(n)) {
        report.fail("hashed-count-formula",
                    "n=" + std::to_string(n) + " l=" + std::to_string(l) + " computed " +
                        std::to_string(hashed.stats.distance_computations) +
                        ", expected (n-1)^2 = " + std::to_string(hashed_distance_count(n)));
        return;
      }
    }
  }
  report.pass("hashed-count-formula", "distance computations equal (n-1)^2 for n=2..12, l in {1,5,n}");
}

void check_engine_equivalence(Reporter& report, bool corrupt_tie_break) {
  struct Dataset {
    std::string name;
    std::vector<Point> points;
  };
  std::vector<Dataset> datasets;
  datasets.push_back({"collinear", {{0.0}, {1.0}, {5.0}}});
  datasets.push_back({"duplicates", std::vector<Point>(4, Point{0.0, 0.0})});
  datasets.push_back({"random-n5-d2", generate_dataset(5, 2, 301)});
  datasets.push_back({"random-n9-d3", generate_dataset(9, 3, 302)});
  datasets.push_back({"random-n12-d1", generate_dataset(12, 1, 303)});

  for (const Dataset& dataset : datasets) {
    const std::vector<MergeRecord> expected = reference_upgmc(dataset.points, corrupt_tie_break);
    const std::uint32_t n = static_cast<std::uint32_t>(dataset.points.size());

    const ClusterResult naive = cluster_naive(dataset.points);
    const ClusterResult hashed_first = cluster_hashed(dataset.points, n, SlotMode::FirstSorted);
    const ClusterResult hashed_full = cluster_hashed(dataset.points, 3, SlotMode::FullySorted);

    for (const ClusterResult* result : {&naive, &hashed_first, &hashed_full}) {
      const std::vector<MergeRecord>& records = result->dendrogram.records;
      if (records.size() != expected.size()) {
        report.fail("engine-equivalence", "dataset '" + dataset.name + "': merge count mismatch");
        return;
      }
      for (std::size_t i = 0; i < records.size(); ++i) {
        const MergeRecord& got = records[i];
        const MergeRecord& want = expected[i];
        const bool ids_match = got.left == want.left && got.right == want.right &&
                               got.new_id == want.new_id && got.new_size == want.new_size;
        const double tolerance = 1e-12 * std::max(1.0, want.distance);
        if (!ids_match || std::abs(got.distance - want.distance) > tolerance) {
          report.fail("engine-equivalence",
                      "dataset '" + dataset.name + "': step " + std::to_string(i + 1) +
                          " merged (" + std::to_string(got.left) + "," + std::to_string(got.right) +
                          "), reference expected (" + std::to_string(want.left) + "," +
                          std::to_string(want.right) + ")");
          return;
        }
      }
    }
  }
  report.pass("engine-equivalence",
              "naive and hashed match the member-mean reference on " +
                  std::to_string(datasets.size()) + " datasets");
}

void check_structure_against_map(Reporter& report) {
  std::mt19937_64 rng(977);
  int ops_run = 0;
  for (const std::uint32_t l : {1u, 4u}) {
    for (const SlotMode mode : {SlotMode::FirstSorted, SlotMode::FullySorted}) {
      std::map<std::pair<ClusterId, ClusterId>, double> model;
      HashedDistanceSet set(l, mode);
      for (int op = 0; op < 1000; ++op, ++ops_run) {
        ClusterId a = static_cast<ClusterId>(rng() % 24);
        ClusterId b = static_cast<ClusterId>(rng() % 24);
        while (b == a) b = static_cast<ClusterId>(rng() % 24);
        if (a > b) std::swap(a, b);
        const auto key = std::make_pair(a, b);
        const bool present = model.count(key) != 0;
        if (rng() % 2 == 0 && !present) {
          const double d = static_cast<double>(rng() % 1000) / 16.0;
          set.insert({a, b, d});
          model.emplace(key, d);
        } else if (present) {
          set.erase(a, b);
          model.erase(key);
        }

        if (set.entry_count() != model.size()) {
          report.fail("structure-model-equivalence", "entry count diverged from std::map");
          return;
        }
        for (const auto& [k, d] : model) {
          const auto found = set.lookup(k.first, k.second);
          if (!found || found->d != d) {
            report.fail("structure-model-equivalence", "lookup diverged from std::map");
            return;
          }
        }
        for (std::uint32_t j = 0; j < set.slot_count(); ++j) {
          const auto slot = set.slot(j);
          for (std::size_t k = 0; k < slot.size(); ++k) {
            if (slot_index(slot[k].id_m, slot[k].id_s, l) != j) {
              report.fail("structure-model-equivalence", "residue invariant violated");
              return;
            }
            if (k > 0 && slot[k - 1].id_m > slot[k].id_m) {
              report.fail("structure-model-equivalence", "slot ordering violated");
              return;
            }
          }
        }
      }
    }
  }
  report.pass("structure-model-equivalence",
              std::to_string(ops_run) + " random ops match std::map (l in {1,4}, both modes)");
}

}  // namespace

bool run(std::ostream& report_stream, const Options& options) {
  Reporter report{report_stream};
  check_counter_formulas(report);
  check_hashed_formulas(report);
  check_engine_equivalence(report, options.corrupt_tie_break);
  check_structure_against_map(report);

  if (report.failures == 0) {
    report_stream << report.checks << " checks run, all passed\n";
    return true;
  }
  report_stream << report.checks << " checks run, " << report.failures << " failed\n";
  return false;
}

}  // namespace upgmc::selftest
