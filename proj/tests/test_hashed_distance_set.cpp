#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "upgmc/core.hpp"
#include "upgmc/hashed_distance_set.hpp"

using namespace upgmc;

namespace {

using Key = std::pair<ClusterId, ClusterId>;

// Asserts the residue invariant, the per-mode slot ordering, key uniqueness,
// and the entry count after a mutation.
void check_invariants(const HashedDistanceSet& set) {
  std::set<Key> seen;
  std::size_t total = 0;
  for (std::uint32_t j = 0; j < set.slot_count(); ++j) {
    const auto slot = set.slot(j);
    total += slot.size();
    for (std::size_t k = 0; k < slot.size(); ++k) {
      const DistanceEntry& e = slot[k];
      REQUIRE(e.id_m < e.id_s);
      REQUIRE(slot_index(e.id_m, e.id_s, set.slot_count()) == j);
      REQUIRE(seen.insert({e.id_m, e.id_s}).second);
      if (k > 0) {
        REQUIRE(slot[k - 1].id_m <= e.id_m);
        if (set.mode() == SlotMode::FullySorted && slot[k - 1].id_m == e.id_m) {
          REQUIRE(slot[k - 1].id_s < e.id_s);
        }
      }
    }
  }
  REQUIRE(total == set.entry_count());
}

// Visible-state equality against the reference associative container.
void check_matches_model(const HashedDistanceSet& set, const std::map<Key, double>& model) {
  REQUIRE(set.entry_count() == model.size());
  std::map<Key, double> contents;
  for (const DistanceEntry& e : set.entries()) {
    contents.emplace(Key{e.id_m, e.id_s}, e.d);
  }
  REQUIRE(contents == model);
}

Key random_key(std::mt19937_64& rng, ClusterId id_limit) {
  ClusterId a = static_cast<ClusterId>(rng() % id_limit);
  ClusterId b = static_cast<ClusterId>(rng() % id_limit);
  while (b == a) b = static_cast<ClusterId>(rng() % id_limit);
  return {std::min(a, b), std::max(a, b)};
}

// Random insert/delete/lookup interleaving checked against std::map after
// every single operation.
void run_model_equivalence(std::uint32_t l, SlotMode mode, int ops, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::map<Key, double> model;
  EngineStats stats;
  HashedDistanceSet set(l, mode, &stats);

  for (int op = 0; op < ops; ++op) {
    const Key key = random_key(rng, 40);
    const auto it = model.find(key);
    switch (rng() % 3) {
      case 0: {  // insert
        if (it == model.end()) {
          const double d = static_cast<double>(rng() % 1000) / 8.0;
          set.insert({key.first, key.second, d});
          model.emplace(key, d);
        } else {
          CHECK_THROWS_AS(set.insert({key.first, key.second, 1.0}), std::invalid_argument);
        }
        break;
      }
      case 1: {  // delete
        if (it != model.end()) {
          const DistanceEntry removed = set.erase(key.first, key.second);
          CHECK(removed.d == it->second);
          model.erase(it);
        } else {
          CHECK_THROWS_AS(set.erase(key.first, key.second), std::out_of_range);
        }
        break;
      }
      default: {  // lookup
        const auto found = set.lookup(key.first, key.second);
        if (it != model.end()) {
          REQUIRE(found.has_value());
          CHECK(found->d == it->second);
        } else {
          CHECK_FALSE(found.has_value());
        }
        break;
      }
    }
    check_invariants(set);
    check_matches_model(set, model);
  }
}

}  // namespace

TEST_CASE("slot_index on pinned inputs") {
  CHECK(slot_index(1, 2, 3) == 0);
  CHECK(slot_index(3, 4, 5) == 2);
  CHECK(slot_index(0, 7, 1) == 0);
  CHECK(slot_index(123, 456, 1) == 0);
}

TEST_CASE("slot_index does not overflow on large id sums") {
  const ClusterId big = 0xffffffffu;
  CHECK(slot_index(big - 1, big, 7) == ((0x1fffffffdull) % 7));
}

TEST_CASE("slot_index rejects unordered pairs") {
  CHECK_THROWS_AS((void)slot_index(2, 2, 5), std::invalid_argument);
  CHECK_THROWS_AS((void)slot_index(3, 1, 5), std::invalid_argument);
}

TEST_CASE("construction requires at least one slot") {
  CHECK_THROWS_AS(HashedDistanceSet(0), std::invalid_argument);
}

TEST_CASE("insert places the first entry in its residue slot") {
  HashedDistanceSet set(4);
  set.insert({0, 1, 0.5});
  CHECK(set.entry_count() == 1);
  CHECK(set.slot(0).empty());
  REQUIRE(set.slot(1).size() == 1);
  CHECK(set.slot(1)[0] == DistanceEntry{0, 1, 0.5});
  check_invariants(set);
}

TEST_CASE("insert into a colliding run, first-sorted mode") {
  // l=1 collapses everything into slot 0.
  HashedDistanceSet set(1, SlotMode::FirstSorted);
  set.insert({2, 5, 1.0});
  set.insert({4, 7, 2.0});
  set.insert({2, 9, 3.0});

  const auto slot = set.slot(0);
  REQUIRE(slot.size() == 3);
  // The new key lands at the first occurrence of id_m = 2.
  CHECK(slot[0] == DistanceEntry{2, 9, 3.0});
  CHECK(slot[1] == DistanceEntry{2, 5, 1.0});
  CHECK(slot[2] == DistanceEntry{4, 7, 2.0});
  check_invariants(set);
}

TEST_CASE("insert into a colliding run, fully-sorted mode") {
  HashedDistanceSet set(1, SlotMode::FullySorted);
  set.insert({2, 5, 1.0});
  set.insert({4, 7, 2.0});
  set.insert({2, 9, 3.0});

  const auto slot = set.slot(0);
  REQUIRE(slot.size() == 3);
  CHECK(slot[0] == DistanceEntry{2, 5, 1.0});
  CHECK(slot[1] == DistanceEntry{2, 9, 3.0});
  CHECK(slot[2] == DistanceEntry{4, 7, 2.0});
  check_invariants(set);
}

TEST_CASE("insert honors true residue collisions with l=11") {
  // Sums 11, 11 and 22 all have residue 0 mod 11.
  for (const SlotMode mode : {SlotMode::FirstSorted, SlotMode::FullySorted}) {
    CAPTURE(static_cast<int>(mode));
    HashedDistanceSet set(11, mode);
    set.insert({2, 9, 1.0});
    set.insert({4, 7, 2.0});
    set.insert({2, 20, 3.0});

    for (std::uint32_t j = 1; j < 11; ++j) CHECK(set.slot(j).empty());
    const auto slot = set.slot(0);
    REQUIRE(slot.size() == 3);
    if (mode == SlotMode::FirstSorted) {
      // Front of the id_m run, regardless of id_s.
      CHECK(slot[0] == DistanceEntry{2, 20, 3.0});
      CHECK(slot[1] == DistanceEntry{2, 9, 1.0});
    } else {
      CHECK(slot[0] == DistanceEntry{2, 9, 1.0});
      CHECK(slot[1] == DistanceEntry{2, 20, 3.0});
    }
    CHECK(slot[2] == DistanceEntry{4, 7, 2.0});
    check_invariants(set);
  }
}

TEST_CASE("insert rejects bad entries") {
  HashedDistanceSet set(3);
  set.insert({0, 1, 1.0});
  CHECK_THROWS_AS(set.insert({0, 1, 2.0}), std::invalid_argument);  // duplicate key
  CHECK_THROWS_AS(set.insert({1, 1, 1.0}), std::invalid_argument);  // id_m == id_s
  CHECK_THROWS_AS(set.insert({2, 1, 1.0}), std::invalid_argument);  // id_m > id_s
  CHECK_THROWS_AS(set.insert({1, 2, -1.0}), std::invalid_argument);
  CHECK(set.entry_count() == 1);
}

TEST_CASE("erase removes exactly the requested key") {
  SUBCASE("singleton") {
    HashedDistanceSet set(5);
    set.insert({0, 1, 0.25});
    const DistanceEntry removed = set.erase(0, 1);
    CHECK(removed == DistanceEntry{0, 1, 0.25});
    CHECK(set.entry_count() == 0);
    CHECK_FALSE(set.lookup(0, 1).has_value());
  }

  SUBCASE("inside an id_m run") {
    for (const SlotMode mode : {SlotMode::FirstSorted, SlotMode::FullySorted}) {
      HashedDistanceSet set(1, mode);
      set.insert({2, 5, 1.0});
      set.insert({2, 9, 2.0});
      set.insert({4, 7, 3.0});
      const DistanceEntry removed = set.erase(2, 9);
      CHECK(removed == DistanceEntry{2, 9, 2.0});
      const auto slot = set.slot(0);
      REQUIRE(slot.size() == 2);
      CHECK(slot[0] == DistanceEntry{2, 5, 1.0});
      CHECK(slot[1] == DistanceEntry{4, 7, 3.0});
      check_invariants(set);
    }
  }

  SUBCASE("absent key") {
    HashedDistanceSet set(4);
    set.insert({0, 1, 1.0});
    CHECK_THROWS_AS(set.erase(3, 8), std::out_of_range);
    CHECK(set.entry_count() == 1);
  }
}

TEST_CASE("lookup follows insert and erase") {
  HashedDistanceSet set(4);
  set.insert({0, 1, 1.0});
  const auto found = set.lookup(0, 1);
  REQUIRE(found.has_value());
  CHECK(*found == DistanceEntry{0, 1, 1.0});
  CHECK_FALSE(set.lookup(0, 2).has_value());

  set.erase(0, 1);
  CHECK_FALSE(set.lookup(0, 1).has_value());
}

TEST_CASE("min_entry scans every slot") {
  SUBCASE("unique minimum") {
    HashedDistanceSet set(3);
    set.insert({0, 1, 2.0});
    set.insert({0, 2, 1.0});
    CHECK(set.min_entry() == DistanceEntry{0, 2, 1.0});
  }

  SUBCASE("ties break to the smallest pair") {
    HashedDistanceSet set(3);
    set.insert({2, 3, 1.0});
    set.insert({0, 1, 1.0});
    CHECK(set.min_entry() == DistanceEntry{0, 1, 1.0});
  }

  SUBCASE("singleton") {
    HashedDistanceSet set(3);
    set.insert({4, 7, 0.5});
    CHECK(set.min_entry() == DistanceEntry{4, 7, 0.5});
  }

  SUBCASE("empty set is a usage error") {
    HashedDistanceSet set(3);
    CHECK_THROWS_AS((void)set.min_entry(), std::invalid_argument);
  }
}

TEST_CASE("min_entry counts one scan comparison per stored entry") {
  EngineStats stats;
  HashedDistanceSet set(7, SlotMode::FirstSorted, &stats);
  const std::uint32_t n = 9;
  for (ClusterId i = 0; i < n; ++i) {
    for (ClusterId j = i + 1; j < n; ++j) set.insert({i, j, static_cast<double>(i + j)});
  }
  CHECK(set.entry_count() == n * (n - 1) / 2);

  stats.scan_comparisons = 0;
  (void)set.min_entry();
  CHECK(stats.scan_comparisons == n * (n - 1) / 2);
}

TEST_CASE("min_entry equals the minimum over iteration") {
  std::mt19937_64 rng(17);
  for (const SlotMode mode : {SlotMode::FirstSorted, SlotMode::FullySorted}) {
    HashedDistanceSet set(13, mode);
    std::map<Key, double> model;
    for (int i = 0; i < 300; ++i) {
      const Key key = random_key(rng, 60);
      if (model.count(key)) continue;
      const double d = static_cast<double>(rng() % 512) / 16.0;
      set.insert({key.first, key.second, d});
      model.emplace(key, d);

      const DistanceEntry* best = nullptr;
      const std::vector<DistanceEntry> all = set.entries();
      for (const DistanceEntry& e : all) {
        if (best == nullptr || closer(e, *best)) best = &e;
      }
      CHECK(set.min_entry() == *best);
    }
  }
}

TEST_CASE("remove_cluster deletes exactly the pairs with the dead id") {
  HashedDistanceSet set(4);
  set.insert({0, 1, 1.0});
  set.insert({0, 2, 2.0});
  set.insert({1, 2, 3.0});

  const std::vector<ClusterId> live{0, 2};
  set.remove_cluster(1, live);
  CHECK(set.entry_count() == 1);
  REQUIRE(set.lookup(0, 2).has_value());
  check_invariants(set);

  SUBCASE("empty live list leaves the set unchanged") {
    set.remove_cluster(3, {});
    CHECK(set.entry_count() == 1);
  }

  SUBCASE("missing pair propagates the not-found error") {
    const std::vector<ClusterId> bogus{3};
    CHECK_THROWS_AS(set.remove_cluster(0, bogus), std::out_of_range);
  }
}

TEST_CASE("remove_cluster plus reinserts step the entry count C(m,2) -> C(m-1,2)") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 20; ++round) {
    const std::uint32_t m = 3 + rng() % 14;
    const std::uint32_t l = 1 + rng() % 8;
    HashedDistanceSet set(l, (round % 2) ? SlotMode::FullySorted : SlotMode::FirstSorted);

    std::vector<ClusterId> ids(m);
    for (std::uint32_t i = 0; i < m; ++i) ids[i] = i;
    for (std::uint32_t i = 0; i < m; ++i) {
      for (std::uint32_t j = i + 1; j < m; ++j) set.insert({i, j, static_cast<double>(rng() % 97)});
    }
    REQUIRE(set.entry_count() == m * (m - 1) / 2);

    // One merge step: drop two ids, insert the new cluster's m-2 pairs.
    const ClusterId left = 0;
    const ClusterId right = 1;
    std::vector<ClusterId> others(ids.begin() + 2, ids.end());
    std::vector<ClusterId> left_sweep(ids.begin() + 1, ids.end());
    set.remove_cluster(left, left_sweep);
    set.remove_cluster(right, others);
    const ClusterId fresh = m;
    for (const ClusterId x : others) set.insert({x, fresh, 1.0});

    CHECK(set.entry_count() == (m - 1) * (m - 2) / 2);
    check_invariants(set);
  }
}

TEST_CASE("entry_count and iteration order") {
  HashedDistanceSet set(2);
  CHECK(set.entry_count() == 0);
  CHECK(set.entries().empty());

  // (1,3) -> slot 0, (1,2) -> slot 1: iteration yields slot 0 first.
  set.insert({1, 2, 9.0});
  set.insert({1, 3, 8.0});
  const auto all = set.entries();
  REQUIRE(all.size() == 2);
  CHECK(all[0] == DistanceEntry{1, 3, 8.0});
  CHECK(all[1] == DistanceEntry{1, 2, 9.0});

  CHECK_THROWS_AS((void)set.slot(2), std::out_of_range);
}

TEST_CASE("probe counter moves with slot searches") {
  EngineStats stats;
  HashedDistanceSet set(1, SlotMode::FirstSorted, &stats);
  CHECK(stats.slot_probes == 0);
  set.insert({0, 1, 1.0});
  CHECK(stats.slot_probes == 0);  // empty slot needs no inspection

  const std::uint64_t before = stats.slot_probes;
  (void)set.lookup(0, 1);
  CHECK(stats.slot_probes > before);
}

TEST_CASE("model equivalence under random op interleavings") {
  for (const std::uint32_t l : {1u, 2u, 17u, 256u}) {
    CAPTURE(l);
    run_model_equivalence(l, SlotMode::FirstSorted, 1200, 1000 + l);
    run_model_equivalence(l, SlotMode::FullySorted, 1200, 2000 + l);
  }
}

TEST_CASE("both slot modes expose identical visible behavior") {
  std::mt19937_64 rng(97);
  EngineStats stats_first, stats_full;
  HashedDistanceSet first(7, SlotMode::FirstSorted, &stats_first);
  HashedDistanceSet full(7, SlotMode::FullySorted, &stats_full);
  std::set<Key> present;

  for (int op = 0; op < 4000; ++op) {
    const Key key = random_key(rng, 48);
    switch (rng() % 3) {
      case 0:
        if (!present.count(key)) {
          const double d = static_cast<double>(rng() % 256) / 4.0;
          first.insert({key.first, key.second, d});
          full.insert({key.first, key.second, d});
          present.insert(key);
        }
        break;
      case 1:
        if (present.count(key)) {
          CHECK(first.erase(key.first, key.second) == full.erase(key.first, key.second));
          present.erase(key);
        }
        break;
      default: {
        const auto a = first.lookup(key.first, key.second);
        const auto b = full.lookup(key.first, key.second);
        CHECK(a == b);
        break;
      }
    }
    CHECK(first.entry_count() == full.entry_count());
    if (!present.empty()) CHECK(first.min_entry() == full.min_entry());
  }
}
