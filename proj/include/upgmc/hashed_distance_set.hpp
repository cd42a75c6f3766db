#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "upgmc/core.hpp"

namespace upgmc {

/// Ordering kept inside each slot.
enum class SlotMode {
  FirstSorted,  // nondecreasing by id_m only; new keys enter at the front of their id_m run
  FullySorted,  // nondecreasing by (id_m, id_s)
};

[[nodiscard]] const char* to_string(SlotMode mode);

/// Slot index of a pair key: (id_m + id_s) mod l. The sum is taken in 64 bits,
/// so it cannot overflow for 32-bit ids. Requires id_m < id_s and l >= 1.
[[nodiscard]] std::uint32_t slot_index(ClusterId id_m, ClusterId id_s, std::uint32_t l);

/// Dynamic set of pairwise centroid distances, partitioned over a fixed array
/// of `l` slots by the residue of the id sum. Each slot is a contiguous
/// sequence ordered by its SlotMode, and every member search runs as
///
///   1. find the slot from the key residue,
///   2. binary-search the first and last entries whose id_m matches,
///   3. resolve id_s inside that run: sequential scan in FirstSorted mode,
///      binary search in FullySorted mode.
///
/// Each entry inspected during steps 2-3 bumps the slot_probes counter of the
/// attached EngineStats; every entry visited by min_entry bumps
/// scan_comparisons.
///
/// Single-writer: no concurrent mutation. Read-only access from several
/// threads is safe once mutation has ceased.
class HashedDistanceSet {
 public:
  /// `slot_count` must be >= 1 and is fixed for the set's lifetime. `stats`
  /// may be null, in which case probes go uncounted.
  explicit HashedDistanceSet(std::uint32_t slot_count, SlotMode mode = SlotMode::FirstSorted,
                             EngineStats* stats = nullptr);

  /// Inserts a new entry. The key (id_m, id_s) must not be present yet;
  /// a duplicate key signals an engine bookkeeping bug and throws
  /// std::invalid_argument.
  void insert(const DistanceEntry& entry);

  /// Removes and returns the entry with the given key. Throws
  /// std::out_of_range when the key is absent.
  DistanceEntry erase(ClusterId id_m, ClusterId id_s);

  /// Returns the stored entry for the key, or nullopt. Absence is a normal
  /// result, not an error.
  [[nodiscard]] std::optional<DistanceEntry> lookup(ClusterId id_m, ClusterId id_s) const;

  /// Entry with the minimal distance over all slots, found by a full scan;
  /// ties break to the lexicographically smallest (id_m, id_s). Throws
  /// std::invalid_argument on an empty set.
  [[nodiscard]] DistanceEntry min_entry() const;

  /// Erases every pair of `dead` with an id from `live`. All such pairs must
  /// be present; a missing one propagates erase's std::out_of_range.
  void remove_cluster(ClusterId dead, std::span<const ClusterId> live);

  [[nodiscard]] std::size_t entry_count() const { return size_; }
  [[nodiscard]] bool empty() const { return size_ == 0; }
  [[nodiscard]] std::uint32_t slot_count() const { return static_cast<std::uint32_t>(slots_.size()); }
  [[nodiscard]] SlotMode mode() const { return mode_; }

  /// Read-only view of slot j. Throws std::out_of_range for j >= slot_count().
  [[nodiscard]] std::span<const DistanceEntry> slot(std::uint32_t j) const;

  /// All entries: slots in index order, entries in slot order.
  [[nodiscard]] std::vector<DistanceEntry> entries() const;

 private:
  struct Location {
    std::uint32_t slot;
    std::size_t pos;
  };

  void count_probe() const;
  [[nodiscard]] std::size_t run_begin(const std::vector<DistanceEntry>& slot, ClusterId id_m) const;
  [[nodiscard]] std::size_t run_end(const std::vector<DistanceEntry>& slot, ClusterId id_m) const;
  [[nodiscard]] std::size_t second_lower_bound(const std::vector<DistanceEntry>& slot, std::size_t lo,
                                               std::size_t hi, ClusterId id_s) const;
  [[nodiscard]] std::optional<Location> find(ClusterId id_m, ClusterId id_s) const;

  std::vector<std::vector<DistanceEntry>> slots_;
  SlotMode mode_;
  EngineStats* stats_;
  std::size_t size_ = 0;
};

}  // namespace upgmc
