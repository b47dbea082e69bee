#ifndef TEMPOTSP_TIMEUTIL_H
#define TEMPOTSP_TIMEUTIL_H

#include <cstdint>
#include <string>

namespace tempotsp {

// Seconds since local midnight. All within-day times use this unit.
using DaySeconds = int32_t;

constexpr DaySeconds kSecondsPerDay = 86400;

// Calendar date. Times never cross midnight in this project, so a date plus
// a DaySeconds offset identifies every instant we care about.
struct Date {
  int year = 0;
  int month = 0;  // 1..12
  int day = 0;    // 1..31

  auto operator<=>(const Date&) const = default;
};

// Days since 1970-01-01 (proleptic Gregorian).
int64_t days_from_civil(const Date& d);

// 0 = Sunday ... 6 = Saturday.
int weekday(const Date& d);

bool is_weekend(const Date& d);

// "YYYY-MM-DD". Throws ParseError on malformed input.
Date parse_date(const std::string& s);
std::string format_date(const Date& d);

// "YYYY-MM-DDTHH:MM:SS" -> date + seconds since midnight.
struct Timestamp {
  Date date;
  DaySeconds seconds = 0;

  auto operator<=>(const Timestamp&) const = default;
};

Timestamp parse_timestamp(const std::string& s);
std::string format_timestamp(const Timestamp& t);

// "HH:MM:SS" for seconds-of-day values.
std::string format_day_seconds(DaySeconds s);

}  // namespace tempotsp

#endif  // TEMPOTSP_TIMEUTIL_H
