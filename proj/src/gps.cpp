#include "tempotsp/gps.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "tempotsp/errors.h"

namespace tempotsp {

Residence residence_from_string(const std::string& s) {
  if (s == "citizen") return Residence::kCitizen;
  if (s == "domestic_visitor") return Residence::kDomesticVisitor;
  if (s == "foreign_visitor") return Residence::kForeignVisitor;
  if (s == "unknown") return Residence::kUnknown;
  throw ParseError("unknown residence label: '" + s + "'");
}

const char* to_string(Residence r) {
  switch (r) {
    case Residence::kCitizen: return "citizen";
    case Residence::kDomesticVisitor: return "domestic_visitor";
    case Residence::kForeignVisitor: return "foreign_visitor";
    case Residence::kUnknown: return "unknown";
  }
  return "unknown";
}

size_t LogSet::total_logs() const {
  size_t n = 0;
  for (const auto& g : groups) n += g.logs.size();
  return n;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (c != '\r') {
      cur += c;
    }
  }
  fields.push_back(cur);
  return fields;
}

double parse_double(const std::string& s, int line_no, const char* what) {
  try {
    size_t pos = 0;
    double v = std::stod(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    std::ostringstream msg;
    msg << "line " << line_no << ": invalid " << what << " '" << s << "'";
    throw ParseError(msg.str());
  }
}

}  // namespace

LogSet parse_logs(std::istream& input) {
  std::string line;
  if (!std::getline(input, line)) {
    throw ParseError("empty input: missing GPS CSV header");
  }
  if (split_csv_line(line) !=
      std::vector<std::string>{"daily_id", "timestamp", "lat", "lon",
                               "residence"}) {
    throw ParseError("bad GPS CSV header: '" + line + "'");
  }

  std::map<std::string, std::vector<GpsLog>> by_id;
  int line_no = 1;
  while (std::getline(input, line)) {
    ++line_no;
    if (line.empty() || line == "\r") continue;
    auto fields = split_csv_line(line);
    if (fields.size() != 5) {
      std::ostringstream msg;
      msg << "line " << line_no << ": expected 5 fields, got " << fields.size();
      throw ParseError(msg.str());
    }
    GpsLog log;
    try {
      log.time = parse_timestamp(fields[1]);
      log.residence = residence_from_string(fields[4]);
    } catch (const ParseError& e) {
      std::ostringstream msg;
      msg << "line " << line_no << ": " << e.what();
      throw ParseError(msg.str());
    }
    log.lat = parse_double(fields[2], line_no, "lat");
    log.lon = parse_double(fields[3], line_no, "lon");
    if (log.lat < -90.0 || log.lat > 90.0) {
      std::ostringstream msg;
      msg << "line " << line_no << ": lat " << log.lat
          << " outside [-90, 90]";
      throw ValidationError(msg.str());
    }
    if (log.lon < -180.0 || log.lon > 180.0) {
      std::ostringstream msg;
      msg << "line " << line_no << ": lon " << log.lon
          << " outside [-180, 180]";
      throw ValidationError(msg.str());
    }
    if (fields[0].empty()) {
      std::ostringstream msg;
      msg << "line " << line_no << ": empty daily_id";
      throw ParseError(msg.str());
    }
    by_id[fields[0]].push_back(log);
  }

  LogSet result;
  result.groups.reserve(by_id.size());
  for (auto& [id, logs] : by_id) {
    std::stable_sort(logs.begin(), logs.end(),
                     [](const GpsLog& a, const GpsLog& b) {
                       return a.time < b.time;
                     });
    result.groups.push_back(DeviceDay{id, std::move(logs)});
  }
  return result;
}

LogSet parse_logs_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open logs file: " + path);
  return parse_logs(in);
}

void write_logs(const LogSet& logs, std::ostream& out) {
  out << "daily_id,timestamp,lat,lon,residence\n";
  char buf[64];
  for (const auto& g : logs.groups) {
    for (const auto& log : g.logs) {
      std::snprintf(buf, sizeof(buf), "%.7f,%.7f", log.lat, log.lon);
      out << g.daily_id << ',' << format_timestamp(log.time) << ',' << buf
          << ',' << to_string(log.residence) << '\n';
    }
  }
}

void write_logs_file(const LogSet& logs, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot open output file: " + path);
  write_logs(logs, out);
}

}  // namespace tempotsp
