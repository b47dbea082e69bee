#ifndef TEMPOTSP_PROFILE_H
#define TEMPOTSP_PROFILE_H

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "tempotsp/connections.h"
#include "tempotsp/mesh.h"

namespace tempotsp {

// Earliest arrival per stop for one (origin, departure time) query.
struct ArrivalLabels {
  MeshId origin;
  DaySeconds depart = 0;
  std::unordered_map<MeshId, DaySeconds> earliest;

  // nullopt = unreachable (+infinity).
  std::optional<DaySeconds> arrival(const MeshId& stop) const {
    auto it = earliest.find(stop);
    if (it == earliest.end()) return std::nullopt;
    return it->second;
  }
};

// Single linear scan over connections sorted ascending by departure.
ArrivalLabels csa_earliest_arrival(const ConnectionArray& conns, MeshId origin,
                                   DaySeconds depart);

// One Pareto-optimal journey toward the destination: depart at dep_time,
// arrive at arr_time. transfers (connections minus one) is tracked only by
// the multi-criteria variant.
struct ParetoEntry {
  DaySeconds dep_time = 0;
  DaySeconds arr_time = 0;
  std::optional<int> transfers;

  bool operator==(const ParetoEntry&) const = default;
};

// a is at least as good as b in every criterion: departs no earlier,
// arrives no later, and (when both track it) transfers no more.
bool dominates_or_equal(const ParetoEntry& a, const ParetoEntry& b);

// Inserts cand unless an existing entry dominates or equals it; entries the
// candidate dominates are removed. Keeps (dep desc, arr asc) order. Returns
// whether cand was inserted.
bool pareto_insert(std::vector<ParetoEntry>& entries, const ParetoEntry& cand);

// Pareto front per stop toward one fixed destination, each sorted descending
// by departure time.
struct ProfileSet {
  std::unordered_map<MeshId, std::vector<ParetoEntry>> profiles;

  static const std::vector<ParetoEntry>& empty_profile();

  const std::vector<ParetoEntry>& at(const MeshId& stop) const {
    auto it = profiles.find(stop);
    return it == profiles.end() ? empty_profile() : it->second;
  }
};

struct ProfileOptions {
  // Minimum gap between arriving and catching the next connection.
  DaySeconds transfer_slack = 0;
};

// Backward scan over connections sorted descending by departure. The
// destination may be a multi-mesh region: arriving at any member counts.
ProfileSet pcsa_profiles(const ConnectionArray& conns, const MeshId& dest,
                         const ProfileOptions& opts = {});
ProfileSet pcsa_profiles(const ConnectionArray& conns,
                         const std::vector<MeshId>& dest_region,
                         const ProfileOptions& opts = {});

// Same scan with (departure, arrival, transfers) Pareto criteria.
ProfileSet mcpcsa_profiles(const ConnectionArray& conns, const MeshId& dest,
                           const ProfileOptions& opts = {});
ProfileSet mcpcsa_profiles(const ConnectionArray& conns,
                           const std::vector<MeshId>& dest_region,
                           const ProfileOptions& opts = {});

// JSON map "row,col" -> [[dep, arr(, transfers)], ...], seconds.
std::string profiles_to_json(const ProfileSet& set);
ProfileSet profiles_from_json(const std::string& json_text);

}  // namespace tempotsp

#endif  // TEMPOTSP_PROFILE_H
