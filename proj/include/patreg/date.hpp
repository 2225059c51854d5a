#pragma once

#include <charconv>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>

namespace patreg {

/// Calendar date, proleptic Gregorian, day precision.
struct Date {
  int year{};
  int month{};
  int day{};

  friend auto operator<=>(const Date&, const Date&) = default;

  static bool is_leap_year(int y) {
    return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0;
  }

  static int days_in_month(int y, int m) {
    static constexpr int k_days[12] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (m < 1 || m > 12) return 0;
    if (m == 2 && is_leap_year(y)) return 29;
    return k_days[m - 1];
  }

  bool ok() const {
    return month >= 1 && month <= 12 && day >= 1 && day <= days_in_month(year, month);
  }

  // Days since 1970-01-01 (days_from_civil, H. Hinnant's algorithm).
  std::int64_t to_day_number() const {
    const int y = year - (month <= 2);
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153u * (month + (month > 2 ? -3 : 9)) + 2u) / 5u + day - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
  }

  static Date from_day_number(std::int64_t z) {
    z += 719468;
    const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
    const unsigned doe = static_cast<unsigned>(z - era * 146097);
    const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
    const std::int64_t y = static_cast<std::int64_t>(yoe) + era * 400;
    const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
    const unsigned mp = (5 * doy + 2) / 153;
    const unsigned d = doy - (153 * mp + 2) / 5 + 1;
    const unsigned m = mp + (mp < 10 ? 3 : -9);
    return Date{static_cast<int>(y + (m <= 2)), static_cast<int>(m), static_cast<int>(d)};
  }

  Date plus_days(std::int64_t n) const { return from_day_number(to_day_number() + n); }

  /// Strict YYYY-MM-DD; rejects analytically malformed dates (e.g. month 13).
  static std::optional<Date> parse(std::string_view s) {
    if (s.size() != 10 || s[4] != '-' || s[7] != '-') return std::nullopt;
    auto field = [&](std::size_t pos, std::size_t len, int& out) {
      for (std::size_t i = pos; i < pos + len; ++i)
        if (s[i] < '0' || s[i] > '9') return false;
      auto [p, ec] = std::from_chars(s.data() + pos, s.data() + pos + len, out);
      return ec == std::errc{} && p == s.data() + pos + len;
    };
    Date d;
    if (!field(0, 4, d.year) || !field(5, 2, d.month) || !field(8, 2, d.day)) return std::nullopt;
    if (!d.ok()) return std::nullopt;
    return d;
  }

  std::string to_string() const {
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02d-%02d", year, month, day);
    return buf;
  }
};

/// Calendar-day difference `to - from`.
inline std::int64_t days_between(Date from, Date to) {
  return to.to_day_number() - from.to_day_number();
}

}  // namespace patreg
