#ifndef TEMPOTSP_GPS_H
#define TEMPOTSP_GPS_H

#include <iosfwd>
#include <string>
#include <vector>

#include "tempotsp/timeutil.h"

namespace tempotsp {

enum class Residence {
  kCitizen,
  kDomesticVisitor,
  kForeignVisitor,
  kUnknown,
};

Residence residence_from_string(const std::string& s);
const char* to_string(Residence r);

// One GPS fix. Position is raw lat/lon; mesh assignment happens downstream.
struct GpsLog {
  Timestamp time;
  double lat = 0.0;
  double lon = 0.0;
  Residence residence = Residence::kUnknown;
};

// All logs of one device-day, sorted ascending by timestamp.
struct DeviceDay {
  std::string daily_id;
  std::vector<GpsLog> logs;
};

// Groups sorted by daily_id so identical inputs give identical output.
struct LogSet {
  std::vector<DeviceDay> groups;

  size_t total_logs() const;
};

// Reads the GPS CSV schema: header `daily_id,timestamp,lat,lon,residence`,
// timestamp `YYYY-MM-DDTHH:MM:SS`. Throws ParseError / ValidationError with
// the offending line number.
LogSet parse_logs(std::istream& input);
LogSet parse_logs_file(const std::string& path);

void write_logs(const LogSet& logs, std::ostream& out);
void write_logs_file(const LogSet& logs, const std::string& path);

}  // namespace tempotsp

#endif  // TEMPOTSP_GPS_H
