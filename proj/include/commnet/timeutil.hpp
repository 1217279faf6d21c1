#pragma once

#include <chrono>
#include <compare>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace commnet {

/// UTC instant at second resolution (seconds since the Unix epoch).
struct Timestamp {
  std::int64_t sec = 0;

  auto operator<=>(const Timestamp&) const = default;
};

/// Half-open time interval [start, end).
struct Interval {
  Timestamp start;
  Timestamp end;

  bool contains(Timestamp t) const { return start <= t && t < end; }
  auto operator<=>(const Interval&) const = default;
};

struct ParsedTime {
  Timestamp value;
  bool had_zone = true;  // false when the input carried no timezone designator
};

namespace detail {

inline bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (c < '0' || c > '9') return false;
  return true;
}

inline int to_int(std::string_view s) {
  int v = 0;
  for (char c : s) v = v * 10 + (c - '0');
  return v;
}

}  // namespace detail

/// Parses an RFC 3339 / ISO-8601 timestamp ("2017-03-01T12:30:05Z",
/// "2017-03-01 12:30:05+05:00", fractional seconds truncated). A missing
/// timezone is treated as UTC and flagged via `had_zone`.
inline std::optional<ParsedTime> parse_rfc3339(std::string_view s) {
  using namespace std::chrono;
  if (s.size() < 19) return std::nullopt;
  if (s[4] != '-' || s[7] != '-') return std::nullopt;
  char sep = s[10];
  if (sep != 'T' && sep != 't' && sep != ' ') return std::nullopt;
  if (s[13] != ':' || s[16] != ':') return std::nullopt;
  std::string_view ys = s.substr(0, 4), mos = s.substr(5, 2), ds = s.substr(8, 2);
  std::string_view hs = s.substr(11, 2), mis = s.substr(14, 2), ss = s.substr(17, 2);
  for (auto part : {ys, mos, ds, hs, mis, ss})
    if (!detail::all_digits(part)) return std::nullopt;

  int yr = detail::to_int(ys), mo = detail::to_int(mos), dy = detail::to_int(ds);
  int hh = detail::to_int(hs), mi = detail::to_int(mis), se = detail::to_int(ss);
  year_month_day ymd{year{yr}, month{static_cast<unsigned>(mo)},
                     day{static_cast<unsigned>(dy)}};
  if (!ymd.ok()) return std::nullopt;
  if (hh > 23 || mi > 59 || se > 60) return std::nullopt;
  if (se == 60) se = 59;  // clamp leap seconds

  std::size_t pos = 19;
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    std::size_t frac = 0;
    while (pos < s.size() && s[pos] >= '0' && s[pos] <= '9') {
      ++pos;
      ++frac;
    }
    if (frac == 0) return std::nullopt;
  }

  std::int64_t offset = 0;
  bool had_zone = true;
  if (pos == s.size()) {
    had_zone = false;
  } else if (s[pos] == 'Z' || s[pos] == 'z') {
    if (pos + 1 != s.size()) return std::nullopt;
  } else if (s[pos] == '+' || s[pos] == '-') {
    if (pos + 6 != s.size() || s[pos + 3] != ':') return std::nullopt;
    std::string_view oh = s.substr(pos + 1, 2), om = s.substr(pos + 4, 2);
    if (!detail::all_digits(oh) || !detail::all_digits(om)) return std::nullopt;
    int ohv = detail::to_int(oh), omv = detail::to_int(om);
    if (ohv > 23 || omv > 59) return std::nullopt;
    offset = std::int64_t{60} * (60 * ohv + omv);
    if (s[pos] == '-') offset = -offset;
  } else {
    return std::nullopt;
  }

  std::int64_t days_since_epoch = sys_days{ymd}.time_since_epoch().count();
  std::int64_t sec =
      days_since_epoch * 86400 + hh * 3600 + mi * 60 + se - offset;
  return ParsedTime{Timestamp{sec}, had_zone};
}

/// Formats a timestamp as "YYYY-MM-DDTHH:MM:SSZ".
inline std::string format_rfc3339(Timestamp t) {
  using namespace std::chrono;
  sys_seconds tp{seconds{t.sec}};
  sys_days d = floor<days>(tp);
  year_month_day ymd{d};
  std::int64_t rem = (tp - d).count();
  char buf[72];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02d:%02d:%02dZ",
                static_cast<int>(ymd.year()),
                static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<int>(rem / 3600), static_cast<int>((rem / 60) % 60),
                static_cast<int>(rem % 60));
  return buf;
}

/// Start of the UTC calendar month containing t.
inline Timestamp month_floor(Timestamp t) {
  using namespace std::chrono;
  year_month_day ymd{floor<days>(sys_seconds{seconds{t.sec}})};
  sys_days first{ymd.year() / ymd.month() / day{1}};
  return Timestamp{first.time_since_epoch().count() * std::int64_t{86400}};
}

/// Advances a month-aligned timestamp by n calendar months.
inline Timestamp add_months(Timestamp month_start, int n) {
  using namespace std::chrono;
  year_month_day ymd{floor<days>(sys_seconds{seconds{month_start.sec}})};
  year_month ym = ymd.year() / ymd.month() + months{n};
  sys_days first{ym.year() / ym.month() / day{1}};
  return Timestamp{first.time_since_epoch().count() * std::int64_t{86400}};
}

/// UTC timestamp for a calendar date, midnight.
inline Timestamp make_utc(int year_v, unsigned month_v, unsigned day_v,
                          int hh = 0, int mi = 0, int se = 0) {
  using namespace std::chrono;
  sys_days d{year{year_v} / month{month_v} / day{day_v}};
  return Timestamp{d.time_since_epoch().count() * std::int64_t{86400} +
                   hh * 3600 + mi * 60 + se};
}

namespace detail {

inline std::string compact_stamp(Timestamp t) {
  std::string s = format_rfc3339(t);
  std::string out;
  for (char c : s)
    if (c != '-' && c != ':') out.push_back(c);
  return out;
}

}  // namespace detail

/// Filename-safe label. Calendar months render as "YYYY-MM", anything else
/// as "<start>-<end>" in compact RFC 3339.
inline std::string interval_label(const Interval& iv) {
  Timestamp fl = month_floor(iv.start);
  if (fl == iv.start && add_months(fl, 1) == iv.end) {
    std::string s = format_rfc3339(iv.start);
    return s.substr(0, 7);
  }
  return detail::compact_stamp(iv.start) + "-" + detail::compact_stamp(iv.end);
}

}  // namespace commnet
