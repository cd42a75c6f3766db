#include "upgmc/core.hpp"

#include <cmath>
#include <stdexcept>

namespace upgmc {

double euclidean_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    throw std::invalid_argument("euclidean_distance: dimension mismatch");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double diff = p[i] - q[i];
    sum += diff * diff;
  }
  return std::sqrt(sum);
}

Cluster centroid_merge(const Cluster& a, const Cluster& b, ClusterId new_id) {
  if (a.id == b.id) {
    throw std::invalid_argument("centroid_merge: operands share an id");
  }
  if (a.centroid.size() != b.centroid.size()) {
    throw std::invalid_argument("centroid_merge: dimension mismatch");
  }
  const double weight_a = static_cast<double>(a.size);
  const double weight_b = static_cast<double>(b.size);
  Cluster merged;
  merged.id = new_id;
  merged.size = a.size + b.size;
  merged.centroid.resize(a.centroid.size());
  for (std::size_t i = 0; i < merged.centroid.size(); ++i) {
    merged.centroid[i] = (weight_a * a.centroid[i] + weight_b * b.centroid[i]) / (weight_a + weight_b);
  }
  return merged;
}

std::uint64_t dendrogram_checksum(const Dendrogram& dendrogram) {
  std::uint64_t hash = 0xcbf29ce484222325ull;  // FNV-1a offset basis
  const auto mix = [&hash](std::uint64_t value) {
    for (int byte = 0; byte < 8; ++byte) {
      hash ^= (value >> (8 * byte)) & 0xffu;
      hash *= 0x100000001b3ull;  // FNV prime
    }
  };
  for (const MergeRecord& record : dendrogram.records) {
    mix(record.left);
    mix(record.right);
  }
  return hash;
}

}  // namespace upgmc
