#pragma once

#include <compare>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rss/date.hpp"

namespace rss {

enum class Frequency { daily, monthly, quarterly };

std::string_view to_string(Frequency f);
Frequency parse_frequency(std::string_view name);  // "daily" | "monthly" | "quarterly"

// A calendar period: a day, a month or a quarter. Ordinals are consecutive within a frequency.
struct Period {
  Frequency freq = Frequency::daily;
  std::int32_t ordinal = 0;  // days since 1970-01-01, year*12+month-1, or year*4+quarter-1

  static Period from_date(Date d, Frequency f);
  // `YYYY-MM-DD`, `YYYY-MM` or `YYYY-Qn`; nullopt when malformed.
  static std::optional<Period> parse(std::string_view label);

  std::string label() const;
  Date first_day() const;
  Period operator+(std::int32_t k) const { return {freq, ordinal + k}; }

  friend bool operator==(const Period&, const Period&) = default;
  friend auto operator<=>(const Period& a, const Period& b) {
    if (auto c = a.freq <=> b.freq; c != 0) return c;
    return a.ordinal <=> b.ordinal;
  }
};

struct Point {
  Period period;
  std::optional<double> value;  // nullopt marks a gap

  friend bool operator==(const Point&, const Point&) = default;
};

// Ordered observations at one frequency. Labels strictly increase; present values are finite.
struct Series {
  Frequency freq = Frequency::monthly;
  std::vector<Point> points;
  std::vector<std::string> meta;

  std::size_t size() const { return points.size(); }
  bool has_gaps() const;
  // Present values only, in order.
  std::vector<double> observed() const;
  // All values; throws DegenerateDataError if any point is a gap. `what` names the series in the message.
  std::vector<double> values_gap_free(std::string_view what = "series") const;
  // Throws InputError if the invariants are broken.
  void validate() const;
  // Restricts to [from, to] (inclusive), either bound optional.
  Series slice(std::optional<Period> from, std::optional<Period> to) const;
};

// `period,value` CSV. Empty, `NA` and `.` values are gaps. The header's column names are not checked.
Series read_series_csv(const std::filesystem::path& path);
Series read_series_csv(std::istream& in, std::string_view source = "<stream>");
void write_series_csv(std::ostream& out, const Series& s);
void write_series_csv(const std::filesystem::path& path, const Series& s);

// Shortest round-trip decimal form.
std::string format_double(double v);

}  // namespace rss
