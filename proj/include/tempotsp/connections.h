#ifndef TEMPOTSP_CONNECTIONS_H
#define TEMPOTSP_CONNECTIONS_H

#include <iosfwd>
#include <string>
#include <vector>

#include "tempotsp/gps.h"
#include "tempotsp/mesh.h"
#include "tempotsp/timeutil.h"

namespace tempotsp {

// One observed movement of a device between two mesh cells. The atomic edge
// of the temporal network.
struct TransferConnection {
  MeshId dep_stop;
  DaySeconds dep_time = 0;
  MeshId arr_stop;
  DaySeconds arr_time = 0;
  std::string source_id;
  Residence residence = Residence::kUnknown;
  Date date;

  bool operator==(const TransferConnection&) const = default;
};

enum class ConnectionOrder {
  kAscendingDeparture,   // earliest-arrival scan order
  kDescendingDeparture,  // profile scan order
};

struct ConnectionArray {
  std::vector<TransferConnection> connections;
  ConnectionOrder order = ConnectionOrder::kDescendingDeparture;

  void sort(ConnectionOrder new_order);
  bool respects_order() const;
};

struct ConnectionFilters {
  // Consecutive fixes closer than min_duration are GPS jitter; gaps longer
  // than max_duration are not single movements.
  DaySeconds min_duration = 60;
  DaySeconds max_duration = 7200;
};

// Emits one connection per consecutive same-device log pair that changes
// mesh on the same date within the duration window. Result is sorted
// descending by departure time.
ConnectionArray build_connections(const LogSet& logs, const MeshConfig& cfg,
                                  const ConnectionFilters& filters = {});

// CSV schema:
// dep_row,dep_col,dep_time,arr_row,arr_col,arr_time,daily_id,residence,date
// with times in seconds since midnight.
void write_connections(const ConnectionArray& conns, std::ostream& out);
void write_connections_file(const ConnectionArray& conns,
                            const std::string& path);
ConnectionArray parse_connections(std::istream& input);
ConnectionArray parse_connections_file(const std::string& path);

}  // namespace tempotsp

#endif  // TEMPOTSP_CONNECTIONS_H
