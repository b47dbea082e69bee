#include "tempotsp/profile.h"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include <json.hpp>

#include "tempotsp/errors.h"

namespace tempotsp {

ArrivalLabels csa_earliest_arrival(const ConnectionArray& conns, MeshId origin,
                                   DaySeconds depart) {
  if (conns.order != ConnectionOrder::kAscendingDeparture) {
    throw ValidationError("csa_earliest_arrival needs ascending connections");
  }
  ArrivalLabels labels;
  labels.origin = origin;
  labels.depart = depart;
  labels.earliest[origin] = depart;
  for (const auto& c : conns.connections) {
    auto it = labels.earliest.find(c.dep_stop);
    if (it == labels.earliest.end() || c.dep_time < it->second) continue;
    auto [arr_it, inserted] =
        labels.earliest.try_emplace(c.arr_stop, c.arr_time);
    if (!inserted && c.arr_time < arr_it->second) {
      arr_it->second = c.arr_time;
    }
  }
  return labels;
}

bool dominates_or_equal(const ParetoEntry& a, const ParetoEntry& b) {
  if (a.dep_time < b.dep_time || a.arr_time > b.arr_time) return false;
  if (a.transfers && b.transfers && *a.transfers > *b.transfers) return false;
  return true;
}

bool pareto_insert(std::vector<ParetoEntry>& entries,
                   const ParetoEntry& cand) {
  for (const auto& e : entries) {
    if (dominates_or_equal(e, cand)) return false;
  }
  std::erase_if(entries, [&cand](const ParetoEntry& e) {
    return dominates_or_equal(cand, e);
  });
  auto pos = std::upper_bound(
      entries.begin(), entries.end(), cand,
      [](const ParetoEntry& a, const ParetoEntry& b) {
        if (a.dep_time != b.dep_time) return a.dep_time > b.dep_time;
        return a.arr_time < b.arr_time;
      });
  entries.insert(pos, cand);
  return true;
}

const std::vector<ParetoEntry>& ProfileSet::empty_profile() {
  static const std::vector<ParetoEntry> empty;
  return empty;
}

namespace {

ProfileSet profile_scan(const ConnectionArray& conns,
                        const std::vector<MeshId>& dest_region,
                        const ProfileOptions& opts, bool with_transfers) {
  if (conns.order != ConnectionOrder::kDescendingDeparture) {
    throw ValidationError("profile scan needs descending connections");
  }
  std::unordered_set<MeshId> dest(dest_region.begin(), dest_region.end());

  ProfileSet set;
  for (const auto& c : conns.connections) {
    DaySeconds catchable_from = c.arr_time + opts.transfer_slack;

    // Entries of the arrival stop catchable after this connection form a
    // prefix of its profile (departures are descending).
    const std::vector<ParetoEntry>* onward = nullptr;
    size_t prefix = 0;
    auto it = set.profiles.find(c.arr_stop);
    if (it != set.profiles.end()) {
      onward = &it->second;
      prefix = static_cast<size_t>(
          std::partition_point(onward->begin(), onward->end(),
                               [catchable_from](const ParetoEntry& e) {
                                 return e.dep_time >= catchable_from;
                               }) -
          onward->begin());
    }

    if (with_transfers) {
      if (dest.contains(c.arr_stop)) {
        pareto_insert(set.profiles[c.dep_stop],
                      ParetoEntry{c.dep_time, c.arr_time, 0});
      }
      for (size_t i = 0; i < prefix; ++i) {
        const ParetoEntry& e = (*onward)[i];
        pareto_insert(set.profiles[c.dep_stop],
                      ParetoEntry{c.dep_time, e.arr_time, *e.transfers + 1});
      }
    } else {
      // In two criteria both coordinates decrease along the profile, so the
      // last catchable entry has the earliest arrival.
      DaySeconds best = std::numeric_limits<DaySeconds>::max();
      if (dest.contains(c.arr_stop)) best = c.arr_time;
      if (prefix > 0) {
        best = std::min(best, (*onward)[prefix - 1].arr_time);
      }
      if (best != std::numeric_limits<DaySeconds>::max()) {
        pareto_insert(set.profiles[c.dep_stop],
                      ParetoEntry{c.dep_time, best, std::nullopt});
      }
    }
  }

  // Stops that never acquired an entry (only touched as arrival stops) are
  // dropped so that "all profiles empty" round-trips cleanly.
  std::erase_if(set.profiles,
                [](const auto& kv) { return kv.second.empty(); });
  return set;
}

}  // namespace

ProfileSet pcsa_profiles(const ConnectionArray& conns, const MeshId& dest,
                         const ProfileOptions& opts) {
  return profile_scan(conns, {dest}, opts, false);
}

ProfileSet pcsa_profiles(const ConnectionArray& conns,
                         const std::vector<MeshId>& dest_region,
                         const ProfileOptions& opts) {
  return profile_scan(conns, dest_region, opts, false);
}

ProfileSet mcpcsa_profiles(const ConnectionArray& conns, const MeshId& dest,
                           const ProfileOptions& opts) {
  return profile_scan(conns, {dest}, opts, true);
}

ProfileSet mcpcsa_profiles(const ConnectionArray& conns,
                           const std::vector<MeshId>& dest_region,
                           const ProfileOptions& opts) {
  return profile_scan(conns, dest_region, opts, true);
}

std::string profiles_to_json(const ProfileSet& set) {
  nlohmann::json out = nlohmann::json::object();
  for (const auto& [stop, entries] : set.profiles) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& e : entries) {
      nlohmann::json entry = {e.dep_time, e.arr_time};
      if (e.transfers) entry.push_back(*e.transfers);
      arr.push_back(std::move(entry));
    }
    out[to_string(stop)] = std::move(arr);
  }
  return out.dump(2) + "\n";
}

namespace {

ProfileSet profiles_from_parsed(const nlohmann::json& j) {
  ProfileSet set;
  for (auto it = j.begin(); it != j.end(); ++it) {
    MeshId stop = mesh_from_string(it.key());
    std::vector<ParetoEntry> entries;
    for (const auto& row : it.value()) {
      if (row.size() != 2 && row.size() != 3) {
        throw ParseError("profile entry must have 2 or 3 elements");
      }
      ParetoEntry e;
      e.dep_time = row[0].get<DaySeconds>();
      e.arr_time = row[1].get<DaySeconds>();
      if (row.size() == 3) e.transfers = row[2].get<int>();
      entries.push_back(e);
    }
    set.profiles.emplace(stop, std::move(entries));
  }
  return set;
}

}  // namespace

ProfileSet profiles_from_json(const std::string& json_text) {
  try {
    return profiles_from_parsed(nlohmann::json::parse(json_text));
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("profiles: ") + e.what());
  }
}

}  // namespace tempotsp
