#include <doctest.h>

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "tempotsp/connections.h"
#include "tempotsp/errors.h"
#include "tempotsp/profile.h"
#include "tempotsp/rng.h"

using namespace tempotsp;

namespace {

MeshId stop(int i) { return MeshId{0, i}; }

TransferConnection conn(int from, DaySeconds dep, int to, DaySeconds arr) {
  TransferConnection c;
  c.dep_stop = stop(from);
  c.dep_time = dep;
  c.arr_stop = stop(to);
  c.arr_time = arr;
  c.source_id = "t";
  c.date = Date{2026, 4, 6};
  return c;
}

ConnectionArray descending(std::vector<TransferConnection> conns) {
  ConnectionArray arr;
  arr.connections = std::move(conns);
  arr.sort(ConnectionOrder::kDescendingDeparture);
  return arr;
}

ConnectionArray ascending(std::vector<TransferConnection> conns) {
  ConnectionArray arr;
  arr.connections = std::move(conns);
  arr.sort(ConnectionOrder::kAscendingDeparture);
  return arr;
}

// ---- reference implementations, deliberately naive ------------------------

// Earliest arrivals by relaxing connections to a fixpoint; immune to scan
// order, unlike the single-pass algorithm under test.
std::unordered_map<MeshId, DaySeconds> fixpoint_arrivals(
    const std::vector<TransferConnection>& conns, MeshId origin, DaySeconds depart) {
  std::unordered_map<MeshId, DaySeconds> labels;
  labels[origin] = depart;
  bool changed = true;
  while (changed) {
    changed = false;
    for (const TransferConnection& c : conns) {
      auto it = labels.find(c.dep_stop);
      if (it == labels.end() || it->second > c.dep_time) continue;
      auto arr = labels.find(c.arr_stop);
      if (arr == labels.end() || arr->second > c.arr_time) {
        labels[c.arr_stop] = c.arr_time;
        changed = true;
      }
    }
  }
  return labels;
}

struct RawJourney {
  DaySeconds dep = 0;
  DaySeconds arr = 0;
  int legs = 0;

  auto operator<=>(const RawJourney&) const = default;
};

// Every connection chain from every stop to the destination set, found by
// depth-first enumeration. Departure times grow strictly along a chain, so
// the recursion terminates.
class JourneyEnumerator {
 public:
  JourneyEnumerator(const std::vector<TransferConnection>& conns,
                    std::vector<MeshId> dest, DaySeconds slack)
      : conns_(conns), dest_(std::move(dest)), slack_(slack), memo_(conns.size()) {}

  std::vector<RawJourney> from_stop(const MeshId& s) {
    std::vector<RawJourney> all;
    for (size_t i = 0; i < conns_.size(); ++i) {
      if (conns_[i].dep_stop != s) continue;
      for (const RawJourney& j : starting_with(i)) all.push_back(j);
    }
    return all;
  }

 private:
  bool is_dest(const MeshId& m) const {
    return std::find(dest_.begin(), dest_.end(), m) != dest_.end();
  }

  const std::vector<RawJourney>& starting_with(size_t idx) {
    if (memo_[idx]) return *memo_[idx];
    std::vector<RawJourney> result;
    const TransferConnection& c = conns_[idx];
    if (is_dest(c.arr_stop)) {
      result.push_back({c.dep_time, c.arr_time, 1});
    }
    for (size_t k = 0; k < conns_.size(); ++k) {
      const TransferConnection& next = conns_[k];
      if (next.dep_stop != c.arr_stop || next.dep_time < c.arr_time + slack_) continue;
      for (const RawJourney& tail : starting_with(k)) {
        result.push_back({c.dep_time, tail.arr, tail.legs + 1});
      }
    }
    memo_[idx] = std::move(result);
    return *memo_[idx];
  }

  const std::vector<TransferConnection>& conns_;
  std::vector<MeshId> dest_;
  DaySeconds slack_;
  std::vector<std::optional<std::vector<RawJourney>>> memo_;
};

// Keeps the maximal elements under (dep max, arr min[, legs min]) and
// returns them sorted descending by departure, the profile order.
std::vector<ParetoEntry> prune(const std::vector<RawJourney>& journeys, bool with_transfers) {
  std::vector<ParetoEntry> entries;
  for (const RawJourney& j : journeys) {
    ParetoEntry e{j.dep, j.arr, std::nullopt};
    if (with_transfers) e.transfers = j.legs - 1;
    entries.push_back(e);
  }
  std::sort(entries.begin(), entries.end(), [](const ParetoEntry& a, const ParetoEntry& b) {
    return std::tie(a.dep_time, a.arr_time) < std::tie(b.dep_time, b.arr_time) ||
           (a.dep_time == b.dep_time && a.arr_time == b.arr_time &&
            a.transfers.value_or(0) < b.transfers.value_or(0));
  });
  entries.erase(std::unique(entries.begin(), entries.end()), entries.end());
  std::vector<ParetoEntry> kept;
  for (const ParetoEntry& e : entries) {
    bool dominated = false;
    for (const ParetoEntry& other : entries) {
      if (other == e) continue;
      if (dominates_or_equal(other, e)) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(e);
  }
  std::sort(kept.begin(), kept.end(), [](const ParetoEntry& a, const ParetoEntry& b) {
    return a.dep_time > b.dep_time;
  });
  return kept;
}

struct RandomInstance {
  std::vector<TransferConnection> conns;
  int stop_count = 0;
};

RandomInstance random_instance(Rng& rng, int max_stops, int max_conns) {
  RandomInstance inst;
  inst.stop_count = 2 + static_cast<int>(rng.below(max_stops - 1));
  const int n = 1 + static_cast<int>(rng.below(max_conns));
  for (int i = 0; i < n; ++i) {
    const int from = static_cast<int>(rng.below(inst.stop_count));
    int to = static_cast<int>(rng.below(inst.stop_count - 1));
    if (to >= from) ++to;
    const auto dep = static_cast<DaySeconds>(rng.below(1000));
    const auto dur = static_cast<DaySeconds>(1 + rng.below(200));
    inst.conns.push_back(conn(from, dep, to, dep + dur));
  }
  return inst;
}

}  // namespace

// ---- earliest arrival ------------------------------------------------------

TEST_CASE("earliest arrivals on the three-connection instance") {
  const auto conns = ascending(
      {conn(0, 100, 1, 200), conn(1, 250, 3, 300), conn(0, 400, 3, 450)});

  SUBCASE("departing at 0 reaches everything") {
    const ArrivalLabels labels = csa_earliest_arrival(conns, stop(0), 0);
    CHECK(labels.arrival(stop(0)) == 0);
    CHECK(labels.arrival(stop(1)) == 200);
    CHECK(labels.arrival(stop(3)) == 300);
  }
  SUBCASE("departing at 150 misses the first leg") {
    const ArrivalLabels labels = csa_earliest_arrival(conns, stop(0), 150);
    CHECK(labels.arrival(stop(0)) == 150);
    CHECK(labels.arrival(stop(3)) == 450);
    CHECK_FALSE(labels.arrival(stop(1)).has_value());
  }
}

TEST_CASE("earliest arrival with no connections labels only the origin") {
  const ConnectionArray conns = ascending({});
  const ArrivalLabels labels = csa_earliest_arrival(conns, stop(0), 500);
  CHECK(labels.earliest.size() == 1);
  CHECK(labels.arrival(stop(0)) == 500);
}

TEST_CASE("earliest arrival requires ascending input") {
  const auto conns = descending({conn(0, 100, 1, 200), conn(0, 400, 3, 450)});
  CHECK_THROWS_AS(csa_earliest_arrival(conns, stop(0), 0), ValidationError);
}

TEST_CASE("single-pass arrivals equal fixpoint relaxation on random instances") {
  Rng rng(11);
  for (int trial = 0; trial < 150; ++trial) {
    const RandomInstance inst = random_instance(rng, 8, 50);
    const ConnectionArray conns = ascending(inst.conns);
    const MeshId origin = stop(static_cast<int>(rng.below(inst.stop_count)));
    const auto depart = static_cast<DaySeconds>(rng.below(1200));
    const ArrivalLabels got = csa_earliest_arrival(conns, origin, depart);
    auto want = fixpoint_arrivals(inst.conns, origin, depart);
    CHECK(got.earliest.size() == want.size());
    for (const auto& [s, t] : want) {
      REQUIRE(got.arrival(s).has_value());
      CHECK(*got.arrival(s) == t);
    }
  }
}

TEST_CASE("adding a connection never worsens any arrival label") {
  Rng rng(12);
  for (int trial = 0; trial < 80; ++trial) {
    RandomInstance inst = random_instance(rng, 6, 30);
    const MeshId origin = stop(0);
    const ArrivalLabels before = csa_earliest_arrival(ascending(inst.conns), origin, 0);
    const int from = static_cast<int>(rng.below(inst.stop_count));
    int to = static_cast<int>(rng.below(inst.stop_count - 1));
    if (to >= from) ++to;
    const auto dep = static_cast<DaySeconds>(rng.below(1000));
    inst.conns.push_back(conn(from, dep, to, dep + 1 + static_cast<DaySeconds>(rng.below(200))));
    const ArrivalLabels after = csa_earliest_arrival(ascending(inst.conns), origin, 0);
    for (const auto& [s, t] : before.earliest) {
      REQUIRE(after.arrival(s).has_value());
      CHECK(*after.arrival(s) <= t);
    }
  }
}

// ---- Pareto front maintenance ----------------------------------------------

TEST_CASE("front insertion rules") {
  SUBCASE("into an empty front") {
    std::vector<ParetoEntry> front;
    CHECK(pareto_insert(front, {100, 300, std::nullopt}));
    CHECK(front == std::vector<ParetoEntry>{{100, 300, std::nullopt}});
  }
  SUBCASE("earlier departure with later arrival is rejected") {
    std::vector<ParetoEntry> front{{100, 300, std::nullopt}};
    CHECK_FALSE(pareto_insert(front, {90, 320, std::nullopt}));
    CHECK(front == std::vector<ParetoEntry>{{100, 300, std::nullopt}});
  }
  SUBCASE("better arrival replaces the entry it dominates") {
    std::vector<ParetoEntry> front{{100, 300, std::nullopt}};
    CHECK(pareto_insert(front, {100, 250, std::nullopt}));
    CHECK(front == std::vector<ParetoEntry>{{100, 250, std::nullopt}});
  }
  SUBCASE("duplicates are not inserted twice") {
    std::vector<ParetoEntry> front{{100, 300, std::nullopt}};
    CHECK_FALSE(pareto_insert(front, {100, 300, std::nullopt}));
    CHECK(front.size() == 1);
  }
  SUBCASE("incomparable entries coexist in descending departure order") {
    std::vector<ParetoEntry> front;
    pareto_insert(front, {100, 300, std::nullopt});
    pareto_insert(front, {400, 450, std::nullopt});
    pareto_insert(front, {200, 320, std::nullopt});
    REQUIRE(front.size() == 3);
    CHECK(front[0].dep_time == 400);
    CHECK(front[1].dep_time == 200);
    CHECK(front[2].dep_time == 100);
  }
}

TEST_CASE("fewer transfers can save an otherwise dominated entry") {
  std::vector<ParetoEntry> front{{100, 300, 1}};
  CHECK(pareto_insert(front, {100, 500, 0}));
  CHECK(front.size() == 2);
  CHECK_FALSE(pareto_insert(front, {100, 500, 2}));
}

// ---- profiles ---------------------------------------------------------------

TEST_CASE("profiles on the three-connection instance") {
  const auto conns = descending(
      {conn(0, 100, 1, 200), conn(1, 250, 3, 300), conn(0, 400, 3, 450)});
  const ProfileSet set = pcsa_profiles(conns, stop(3));
  CHECK(set.at(stop(0)) ==
        std::vector<ParetoEntry>{{400, 450, std::nullopt}, {100, 300, std::nullopt}});
  CHECK(set.at(stop(1)) == std::vector<ParetoEntry>{{250, 300, std::nullopt}});
  CHECK(set.at(stop(3)).empty());
}

TEST_CASE("a single direct connection gives a single-entry profile") {
  const auto conns = descending({conn(0, 100, 3, 200)});
  const ProfileSet set = pcsa_profiles(conns, stop(3));
  CHECK(set.at(stop(0)) == std::vector<ParetoEntry>{{100, 200, std::nullopt}});
}

TEST_CASE("an unreachable destination leaves every profile empty") {
  const auto conns = descending({conn(0, 100, 1, 200), conn(1, 250, 2, 300)});
  const ProfileSet set = pcsa_profiles(conns, stop(7));
  CHECK(set.profiles.empty());
}

TEST_CASE("profile scan requires descending input") {
  const auto conns = ascending({conn(0, 100, 1, 200), conn(0, 400, 3, 450)});
  CHECK_THROWS_AS(pcsa_profiles(conns, stop(1)), ValidationError);
}

TEST_CASE("transfer counts follow journey length") {
  const auto conns = descending({conn(0, 100, 3, 200)});
  const ProfileSet direct = mcpcsa_profiles(conns, stop(3));
  REQUIRE(direct.at(stop(0)).size() == 1);
  CHECK(direct.at(stop(0))[0].transfers == 0);

  const auto chain = descending({conn(0, 100, 1, 150), conn(1, 200, 3, 300)});
  const ProfileSet chained = mcpcsa_profiles(chain, stop(3));
  REQUIRE(chained.at(stop(0)).size() == 1);
  CHECK(chained.at(stop(0))[0].transfers == 1);
}

TEST_CASE("slow direct and fast chained journeys both survive with transfer counts") {
  const auto conns = descending(
      {conn(0, 100, 3, 500), conn(0, 100, 1, 150), conn(1, 200, 3, 300)});

  const ProfileSet three_crit = mcpcsa_profiles(conns, stop(3));
  const auto& front = three_crit.at(stop(0));
  REQUIRE(front.size() == 2);
  CHECK(front[0] == ParetoEntry{100, 300, 1});
  CHECK(front[1] == ParetoEntry{100, 500, 0});

  // The two-criteria variant keeps only the faster journey.
  const ProfileSet two_crit = pcsa_profiles(conns, stop(3));
  CHECK(two_crit.at(stop(0)) == std::vector<ParetoEntry>{{100, 300, std::nullopt}});
}

TEST_CASE("transfer slack delays which continuations are catchable") {
  // Arrive at stop 1 at 200; the 200 departure is catchable only with zero
  // slack, the 260 departure always.
  const auto conns = descending(
      {conn(0, 100, 1, 200), conn(1, 200, 3, 280), conn(1, 260, 3, 350)});
  const ProfileSet tight = pcsa_profiles(conns, stop(3), ProfileOptions{0});
  REQUIRE(tight.at(stop(0)).size() == 1);
  CHECK(tight.at(stop(0))[0].arr_time == 280);

  const ProfileSet slack = pcsa_profiles(conns, stop(3), ProfileOptions{60});
  REQUIRE(slack.at(stop(0)).size() == 1);
  CHECK(slack.at(stop(0))[0].arr_time == 350);
}

TEST_CASE("multi-mesh destinations accept arrival at any member") {
  const auto conns = descending({conn(0, 100, 2, 200), conn(0, 300, 4, 380)});
  const std::vector<MeshId> region{stop(2), stop(4)};
  const ProfileSet set = pcsa_profiles(conns, region);
  CHECK(set.at(stop(0)) ==
        std::vector<ParetoEntry>{{300, 380, std::nullopt}, {100, 200, std::nullopt}});
}

TEST_CASE("profiles match exhaustive journey enumeration on random instances") {
  Rng rng(13);
  for (int trial = 0; trial < 150; ++trial) {
    const RandomInstance inst = random_instance(rng, 8, 50);
    const ConnectionArray conns = descending(inst.conns);
    const DaySeconds slack = rng.below(2) == 0 ? 0 : 30;
    std::vector<MeshId> dest{stop(static_cast<int>(rng.below(inst.stop_count)))};
    if (rng.below(3) == 0) {
      MeshId extra = stop(static_cast<int>(rng.below(inst.stop_count)));
      if (extra != dest[0]) dest.push_back(extra);
    }
    JourneyEnumerator oracle(inst.conns, dest, slack);

    const ProfileSet two_crit = pcsa_profiles(conns, dest, ProfileOptions{slack});
    const ProfileSet three_crit = mcpcsa_profiles(conns, dest, ProfileOptions{slack});
    for (int s = 0; s < inst.stop_count; ++s) {
      if (std::find(dest.begin(), dest.end(), stop(s)) != dest.end()) continue;
      const auto journeys = oracle.from_stop(stop(s));
      CHECK(two_crit.at(stop(s)) == prune(journeys, false));
      CHECK(three_crit.at(stop(s)) == prune(journeys, true));
    }
  }
}

TEST_CASE("profiles do not depend on the arrangement of equal departures") {
  Rng rng(14);
  for (int trial = 0; trial < 60; ++trial) {
    RandomInstance inst = random_instance(rng, 5, 20);
    // Clone a few connections with shared departure times but new endpoints.
    const size_t base = inst.conns.size();
    for (size_t i = 0; i < base; i += 2) {
      TransferConnection dup = inst.conns[i];
      dup.arr_stop = stop(static_cast<int>(rng.below(inst.stop_count)));
      if (dup.arr_stop == dup.dep_stop) continue;
      dup.arr_time = dup.dep_time + 1 + static_cast<DaySeconds>(rng.below(300));
      inst.conns.push_back(dup);
    }
    ConnectionArray a = descending(inst.conns);
    // Rearrange ties: reverse each maximal run of equal departure times.
    ConnectionArray b = a;
    auto& cs = b.connections;
    size_t i = 0;
    while (i < cs.size()) {
      size_t j = i;
      while (j + 1 < cs.size() && cs[j + 1].dep_time == cs[i].dep_time) ++j;
      std::reverse(cs.begin() + static_cast<ptrdiff_t>(i), cs.begin() + static_cast<ptrdiff_t>(j) + 1);
      i = j + 1;
    }
    REQUIRE(b.respects_order());

    const MeshId dest = stop(static_cast<int>(rng.below(inst.stop_count)));
    const ProfileSet fa = pcsa_profiles(a, dest);
    const ProfileSet fb = pcsa_profiles(b, dest);
    REQUIRE(fa.profiles.size() == fb.profiles.size());
    for (const auto& [s, front] : fa.profiles) {
      CHECK(fb.at(s) == front);
    }
  }
}

TEST_CASE("adding a connection never removes a dominating profile entry") {
  Rng rng(15);
  for (int trial = 0; trial < 80; ++trial) {
    RandomInstance inst = random_instance(rng, 6, 30);
    const MeshId dest = stop(inst.stop_count - 1);
    const ProfileSet before = pcsa_profiles(descending(inst.conns), dest);
    const int from = static_cast<int>(rng.below(inst.stop_count));
    int to = static_cast<int>(rng.below(inst.stop_count - 1));
    if (to >= from) ++to;
    const auto dep = static_cast<DaySeconds>(rng.below(1000));
    inst.conns.push_back(conn(from, dep, to, dep + 1 + static_cast<DaySeconds>(rng.below(200))));
    const ProfileSet after = pcsa_profiles(descending(inst.conns), dest);
    for (const auto& [s, front] : before.profiles) {
      for (const ParetoEntry& e : front) {
        const auto& updated = after.at(s);
        const bool covered = std::any_of(updated.begin(), updated.end(), [&](const ParetoEntry& u) {
          return dominates_or_equal(u, e);
        });
        CHECK(covered);
      }
    }
  }
}

TEST_CASE("no profile entry dominates another within a stop") {
  Rng rng(16);
  for (int trial = 0; trial < 60; ++trial) {
    const RandomInstance inst = random_instance(rng, 8, 50);
    const ProfileSet set = mcpcsa_profiles(descending(inst.conns), stop(0));
    for (const auto& [s, front] : set.profiles) {
      for (size_t x = 0; x < front.size(); ++x) {
        CHECK(front[x].arr_time > front[x].dep_time);
        for (size_t y = 0; y < front.size(); ++y) {
          if (x == y) continue;
          CHECK_FALSE(dominates_or_equal(front[x], front[y]));
        }
      }
    }
  }
}

TEST_CASE("profile sets round-trip through JSON") {
  const auto conns = descending(
      {conn(0, 100, 3, 500), conn(0, 100, 1, 150), conn(1, 200, 3, 300), conn(2, 90, 3, 140)});
  for (bool transfers : {false, true}) {
    const ProfileSet set = transfers ? mcpcsa_profiles(conns, stop(3)) : pcsa_profiles(conns, stop(3));
    const ProfileSet back = profiles_from_json(profiles_to_json(set));
    REQUIRE(back.profiles.size() == set.profiles.size());
    for (const auto& [s, front] : set.profiles) {
      CHECK(back.at(s) == front);
    }
  }
}
