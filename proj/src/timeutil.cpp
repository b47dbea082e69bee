#include "tempotsp/timeutil.h"

#include <cstdio>

#include "tempotsp/errors.h"

namespace tempotsp {

int64_t days_from_civil(const Date& d) {
  // Howard Hinnant's civil-days algorithm.
  int y = d.year;
  const int m = d.month;
  const int dy = d.day;
  y -= m <= 2;
  const int era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153u * (m + (m > 2 ? -3 : 9)) + 2) / 5 + dy - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return static_cast<int64_t>(era) * 146097 + static_cast<int64_t>(doe) -
         719468;
}

int weekday(const Date& d) {
  // 1970-01-01 was a Thursday.
  int64_t days = days_from_civil(d);
  return static_cast<int>(((days % 7) + 11) % 7);
}

bool is_weekend(const Date& d) {
  int w = weekday(d);
  return w == 0 || w == 6;
}

namespace {

bool valid_date(int y, int m, int dy) {
  if (m < 1 || m > 12 || dy < 1) return false;
  static const int days_in_month[] = {31, 28, 31, 30, 31, 30,
                                      31, 31, 30, 31, 30, 31};
  int limit = days_in_month[m - 1];
  bool leap = (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  if (m == 2 && leap) limit = 29;
  return dy <= limit;
}

}  // namespace

Date parse_date(const std::string& s) {
  int y = 0, m = 0, d = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2d%c", &y, &m, &d, &tail) != 3 ||
      s.size() != 10 || !valid_date(y, m, d)) {
    throw ParseError("invalid date: '" + s + "'");
  }
  return Date{y, m, d};
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

Timestamp parse_timestamp(const std::string& s) {
  int y = 0, mo = 0, d = 0, h = 0, mi = 0, sec = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%4d-%2d-%2dT%2d:%2d:%2d%c", &y, &mo, &d, &h, &mi,
                  &sec, &tail) != 6 ||
      s.size() != 19 || !valid_date(y, mo, d) || h < 0 || h > 23 || mi < 0 ||
      mi > 59 || sec < 0 || sec > 59) {
    throw ParseError("invalid timestamp: '" + s + "'");
  }
  return Timestamp{Date{y, mo, d}, h * 3600 + mi * 60 + sec};
}

std::string format_timestamp(const Timestamp& t) {
  return format_date(t.date) + "T" + format_day_seconds(t.seconds);
}

std::string format_day_seconds(DaySeconds s) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%02d:%02d:%02d", s / 3600, (s / 60) % 60,
                s % 60);
  return buf;
}

}  // namespace tempotsp
