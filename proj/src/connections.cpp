#include "tempotsp/connections.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <tuple>

#include "tempotsp/errors.h"

namespace tempotsp {

namespace {

// Total order on connections so equal inputs serialize identically. Primary
// key is departure time; the rest only breaks ties.
auto tie_key(const TransferConnection& c) {
  return std::tie(c.arr_time, c.dep_stop, c.arr_stop, c.source_id);
}

}  // namespace

void ConnectionArray::sort(ConnectionOrder new_order) {
  if (new_order == ConnectionOrder::kAscendingDeparture) {
    std::sort(connections.begin(), connections.end(),
              [](const TransferConnection& a, const TransferConnection& b) {
                if (a.dep_time != b.dep_time) return a.dep_time < b.dep_time;
                return tie_key(a) < tie_key(b);
              });
  } else {
    std::sort(connections.begin(), connections.end(),
              [](const TransferConnection& a, const TransferConnection& b) {
                if (a.dep_time != b.dep_time) return a.dep_time > b.dep_time;
                return tie_key(a) < tie_key(b);
              });
  }
  order = new_order;
}

bool ConnectionArray::respects_order() const {
  for (size_t i = 1; i < connections.size(); ++i) {
    DaySeconds prev = connections[i - 1].dep_time;
    DaySeconds cur = connections[i].dep_time;
    if (order == ConnectionOrder::kAscendingDeparture ? cur < prev
                                                      : cur > prev) {
      return false;
    }
  }
  return true;
}

ConnectionArray build_connections(const LogSet& logs, const MeshConfig& cfg,
                                  const ConnectionFilters& filters) {
  ConnectionArray result;
  for (const auto& group : logs.groups) {
    Residence label =
        group.logs.empty() ? Residence::kUnknown : group.logs[0].residence;
    for (size_t i = 1; i < group.logs.size(); ++i) {
      const GpsLog& a = group.logs[i - 1];
      const GpsLog& b = group.logs[i];
      if (a.time.date != b.time.date) continue;  // never spans midnight
      DaySeconds gap = b.time.seconds - a.time.seconds;
      if (gap < filters.min_duration || gap > filters.max_duration) continue;
      MeshId from = assign_mesh(a.lat, a.lon, cfg);
      MeshId to = assign_mesh(b.lat, b.lon, cfg);
      if (from == to) continue;
      result.connections.push_back(TransferConnection{
          from, a.time.seconds, to, b.time.seconds, group.daily_id, label,
          a.time.date});
    }
  }
  result.sort(ConnectionOrder::kDescendingDeparture);
  return result;
}

void write_connections(const ConnectionArray& conns, std::ostream& out) {
  out << "dep_row,dep_col,dep_time,arr_row,arr_col,arr_time,daily_id,"
         "residence,date\n";
  for (const auto& c : conns.connections) {
    out << c.dep_stop.row << ',' << c.dep_stop.col << ',' << c.dep_time << ','
        << c.arr_stop.row << ',' << c.arr_stop.col << ',' << c.arr_time << ','
        << c.source_id << ',' << to_string(c.residence) << ','
        << format_date(c.date) << '\n';
  }
}

void write_connections_file(const ConnectionArray& conns,
                            const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  write_connections(conns, out);
}

ConnectionArray parse_connections(std::istream& input) {
  std::string line;
  if (!std::getline(input, line)) {
    throw ParseError("empty input: missing connection CSV header");
  }
  ConnectionArray result;
  int line_no = 1;
  while (std::getline(input, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    std::istringstream ss(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (fields.size() != 9) {
      std::ostringstream msg;
      msg << "line " << line_no << ": expected 9 fields, got " << fields.size();
      throw ParseError(msg.str());
    }
    TransferConnection c;
    try {
      c.dep_stop = MeshId{std::stoi(fields[0]), std::stoi(fields[1])};
      c.dep_time = std::stoi(fields[2]);
      c.arr_stop = MeshId{std::stoi(fields[3]), std::stoi(fields[4])};
      c.arr_time = std::stoi(fields[5]);
      c.source_id = fields[6];
      c.residence = residence_from_string(fields[7]);
      c.date = parse_date(fields[8]);
    } catch (const std::exception& e) {
      std::ostringstream msg;
      msg << "line " << line_no << ": " << e.what();
      throw ParseError(msg.str());
    }
    if (c.arr_time <= c.dep_time) {
      std::ostringstream msg;
      msg << "line " << line_no << ": arr_time must exceed dep_time";
      throw ValidationError(msg.str());
    }
    if (c.dep_stop == c.arr_stop) {
      std::ostringstream msg;
      msg << "line " << line_no << ": dep_stop equals arr_stop";
      throw ValidationError(msg.str());
    }
    result.connections.push_back(std::move(c));
  }
  result.sort(ConnectionOrder::kDescendingDeparture);
  return result;
}

ConnectionArray parse_connections_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open connections file: " + path);
  return parse_connections(in);
}

}  // namespace tempotsp
