#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace rss {

using Date = std::chrono::sys_days;

// Strict ISO-8601 calendar date, `YYYY-MM-DD`.
std::optional<Date> parse_date(std::string_view text);
std::string format_date(Date d);

inline Date make_date(int y, unsigned m, unsigned d) {
  return std::chrono::sys_days{std::chrono::year{y} / std::chrono::month{m} / std::chrono::day{d}};
}

}  // namespace rss
