#include "upgmc/hashed_distance_set.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace upgmc {

const char* to_string(SlotMode mode) {
  return mode == SlotMode::FirstSorted ? "first" : "full";
}

std::uint32_t slot_index(ClusterId id_m, ClusterId id_s, std::uint32_t l) {
  if (id_m >= id_s) {
    throw std::invalid_argument("slot_index: requires id_m < id_s");
  }
  const std::uint64_t sum = static_cast<std::uint64_t>(id_m) + static_cast<std::uint64_t>(id_s);
  return static_cast<std::uint32_t>(sum % l);
}

HashedDistanceSet::HashedDistanceSet(std::uint32_t slot_count, SlotMode mode, EngineStats* stats)
    : slots_(slot_count), mode_(mode), stats_(stats) {
  if (slot_count == 0) {
    throw std::invalid_argument("HashedDistanceSet: slot count must be positive");
  }
}

void HashedDistanceSet::count_probe() const {
  if (stats_ != nullptr) ++stats_->slot_probes;
}

// First index in the slot whose id_m is not less than the key.
std::size_t HashedDistanceSet::run_begin(const std::vector<DistanceEntry>& slot, ClusterId id_m) const {
  std::size_t lo = 0;
  std::size_t hi = slot.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    count_probe();
    if (slot[mid].id_m < id_m) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// First index in the slot whose id_m is greater than the key.
std::size_t HashedDistanceSet::run_end(const std::vector<DistanceEntry>& slot, ClusterId id_m) const {
  std::size_t lo = 0;
  std::size_t hi = slot.size();
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    count_probe();
    if (slot[mid].id_m <= id_m) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

// First index in [lo, hi) whose id_s is not less than the key. Only used in
// FullySorted mode, where the run is ordered by id_s.
std::size_t HashedDistanceSet::second_lower_bound(const std::vector<DistanceEntry>& slot, std::size_t lo,
                                                  std::size_t hi, ClusterId id_s) const {
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    count_probe();
    if (slot[mid].id_s < id_s) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::optional<HashedDistanceSet::Location> HashedDistanceSet::find(ClusterId id_m, ClusterId id_s) const {
  const std::uint32_t j = slot_index(id_m, id_s, slot_count());
  const std::vector<DistanceEntry>& slot = slots_[j];
  const std::size_t lo = run_begin(slot, id_m);
  const std::size_t hi = run_end(slot, id_m);
  if (mode_ == SlotMode::FirstSorted) {
    for (std::size_t pos = lo; pos < hi; ++pos) {
      count_probe();
      if (slot[pos].id_s == id_s) return Location{j, pos};
    }
    return std::nullopt;
  }
  const std::size_t pos = second_lower_bound(slot, lo, hi, id_s);
  if (pos < hi) {
    count_probe();
    if (slot[pos].id_s == id_s) return Location{j, pos};
  }
  return std::nullopt;
}

void HashedDistanceSet::insert(const DistanceEntry& entry) {
  const std::uint32_t j = slot_index(entry.id_m, entry.id_s, slot_count());
  if (!(entry.d >= 0.0) || !std::isfinite(entry.d)) {
    throw std::invalid_argument("insert: distance must be finite and non-negative");
  }
  std::vector<DistanceEntry>& slot = slots_[j];
  const std::size_t lo = run_begin(slot, entry.id_m);
  const std::size_t hi = run_end(slot, entry.id_m);

  std::size_t pos;
  if (mode_ == SlotMode::FirstSorted) {
    for (std::size_t i = lo; i < hi; ++i) {
      count_probe();
      if (slot[i].id_s == entry.id_s) {
        throw std::invalid_argument("insert: duplicate key");
      }
    }
    pos = lo;  // position of the first occurrence of id_m
  } else {
    pos = second_lower_bound(slot, lo, hi, entry.id_s);
    if (pos < hi) {
      count_probe();
      if (slot[pos].id_s == entry.id_s) {
        throw std::invalid_argument("insert: duplicate key");
      }
    }
  }
  slot.insert(slot.begin() + static_cast<std::ptrdiff_t>(pos), entry);
  ++size_;
}

DistanceEntry HashedDistanceSet::erase(ClusterId id_m, ClusterId id_s) {
  const std::optional<Location> loc = find(id_m, id_s);
  if (!loc) {
    throw std::out_of_range("erase: key not present");
  }
  std::vector<DistanceEntry>& slot = slots_[loc->slot];
  const DistanceEntry removed = slot[loc->pos];
  slot.erase(slot.begin() + static_cast<std::ptrdiff_t>(loc->pos));
  --size_;
  return removed;
}

std::optional<DistanceEntry> HashedDistanceSet::lookup(ClusterId id_m, ClusterId id_s) const {
  const std::optional<Location> loc = find(id_m, id_s);
  if (!loc) return std::nullopt;
  return slots_[loc->slot][loc->pos];
}

DistanceEntry HashedDistanceSet::min_entry() const {
  if (size_ == 0) {
    throw std::invalid_argument("min_entry: empty set");
  }
  const DistanceEntry* best = nullptr;
  for (const std::vector<DistanceEntry>& slot : slots_) {
    for (const DistanceEntry& entry : slot) {
      if (stats_ != nullptr) ++stats_->scan_comparisons;
      if (best == nullptr || closer(entry, *best)) best = &entry;
    }
  }
  return *best;
}

void HashedDistanceSet::remove_cluster(ClusterId dead, std::span<const ClusterId> live) {
  for (const ClusterId id : live) {
    if (id == dead) {
      throw std::invalid_argument("remove_cluster: dead id listed as live");
    }
    erase(std::min(dead, id), std::max(dead, id));
  }
}

std::span<const DistanceEntry> HashedDistanceSet::slot(std::uint32_t j) const {
  if (j >= slot_count()) {
    throw std::out_of_range("slot: index out of range");
  }
  return slots_[j];
}

std::vector<DistanceEntry> HashedDistanceSet::entries() const {
  std::vector<DistanceEntry> all;
  all.reserve(size_);
  for (const std::vector<DistanceEntry>& slot : slots_) {
    all.insert(all.end(), slot.begin(), slot.end());
  }
  return all;
}

}  // namespace upgmc
