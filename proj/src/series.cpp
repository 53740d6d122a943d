#include "rss/series.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rss/error.hpp"

namespace rss {

namespace {

bool digits(std::string_view s, int& out) {
  if (s.empty()) return false;
  int v = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return false;
    v = v * 10 + (c - '0');
  }
  out = v;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '"')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r' || s.back() == '"')) s.remove_suffix(1);
  return s;
}

}  // namespace

std::string_view to_string(Frequency f) {
  switch (f) {
    case Frequency::daily: return "daily";
    case Frequency::monthly: return "monthly";
    case Frequency::quarterly: return "quarterly";
  }
  return "?";
}

Frequency parse_frequency(std::string_view name) {
  if (name == "daily") return Frequency::daily;
  if (name == "monthly") return Frequency::monthly;
  if (name == "quarterly") return Frequency::quarterly;
  throw InputError("unknown frequency '" + std::string(name) + "'");
}

Period Period::from_date(Date d, Frequency f) {
  if (f == Frequency::daily) return {f, static_cast<std::int32_t>(d.time_since_epoch().count())};
  const std::chrono::year_month_day ymd{d};
  const int y = static_cast<int>(ymd.year());
  const int m = static_cast<int>(static_cast<unsigned>(ymd.month())) - 1;
  if (f == Frequency::monthly) return {f, y * 12 + m};
  return {f, y * 4 + m / 3};
}

std::optional<Period> Period::parse(std::string_view label) {
  label = trim(label);
  if (label.size() == 10) {
    const auto d = parse_date(label);
    if (!d) return std::nullopt;
    return from_date(*d, Frequency::daily);
  }
  int y = 0, n = 0;
  if (label.size() == 7 && label[4] == '-' && digits(label.substr(0, 4), y)) {
    if (label[5] == 'Q' || label[5] == 'q') {
      if (!digits(label.substr(6, 1), n) || n < 1 || n > 4) return std::nullopt;
      return Period{Frequency::quarterly, y * 4 + n - 1};
    }
    if (!digits(label.substr(5, 2), n) || n < 1 || n > 12) return std::nullopt;
    return Period{Frequency::monthly, y * 12 + n - 1};
  }
  return std::nullopt;
}

std::string Period::label() const {
  char buf[32];
  switch (freq) {
    case Frequency::daily: return format_date(first_day());
    case Frequency::monthly: {
      const int y = ordinal >= 0 ? ordinal / 12 : (ordinal - 11) / 12;
      std::snprintf(buf, sizeof buf, "%04d-%02d", y, ordinal - y * 12 + 1);
      return buf;
    }
    case Frequency::quarterly: {
      const int y = ordinal >= 0 ? ordinal / 4 : (ordinal - 3) / 4;
      std::snprintf(buf, sizeof buf, "%04d-Q%d", y, ordinal - y * 4 + 1);
      return buf;
    }
  }
  return {};
}

Date Period::first_day() const {
  switch (freq) {
    case Frequency::daily: return Date{Date::duration{ordinal}};
    case Frequency::monthly: {
      const int y = ordinal >= 0 ? ordinal / 12 : (ordinal - 11) / 12;
      return make_date(y, static_cast<unsigned>(ordinal - y * 12 + 1), 1);
    }
    case Frequency::quarterly: {
      const int y = ordinal >= 0 ? ordinal / 4 : (ordinal - 3) / 4;
      return make_date(y, static_cast<unsigned>((ordinal - y * 4) * 3 + 1), 1);
    }
  }
  return {};
}

bool Series::has_gaps() const {
  for (const auto& p : points)
    if (!p.value) return true;
  return false;
}

std::vector<double> Series::observed() const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points)
    if (p.value) out.push_back(*p.value);
  return out;
}

std::vector<double> Series::values_gap_free(std::string_view what) const {
  std::vector<double> out;
  out.reserve(points.size());
  for (const auto& p : points) {
    if (!p.value) throw DegenerateDataError(std::string(what) + " has a gap at " + p.period.label());
    out.push_back(*p.value);
  }
  return out;
}

void Series::validate() const {
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (points[i].period.freq != freq) throw InputError("series mixes frequencies at " + points[i].period.label());
    if (i > 0 && !(points[i - 1].period < points[i].period))
      throw InputError("series periods not strictly increasing at " + points[i].period.label());
    if (points[i].value && !std::isfinite(*points[i].value))
      throw InputError("non-finite value at " + points[i].period.label());
  }
}

Series Series::slice(std::optional<Period> from, std::optional<Period> to) const {
  Series out{freq, {}, meta};
  for (const auto& p : points) {
    if (from && p.period.first_day() < from->first_day()) continue;
    if (to) {
      // `to` is inclusive of its whole period.
      const auto end = (*to + 1).first_day();
      if (!(p.period.first_day() < end)) continue;
    }
    out.points.push_back(p);
  }
  return out;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

Series read_series_csv(std::istream& in, std::string_view source) {
  Series s;
  std::string line;
  std::size_t line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view row = trim(line);
    if (row.empty()) continue;
    if (!header) {
      header = true;
      // Header is optional: a first row that starts with a period label is data.
      if (!Period::parse(trim(row.substr(0, row.find(','))))) continue;
    }
    const auto comma = row.find(',');
    if (comma == std::string_view::npos)
      throw InputError(std::string(source) + ":" + std::to_string(line_no) + ": expected period,value");
    const auto label = trim(row.substr(0, comma));
    auto rest = row.substr(comma + 1);
    rest = trim(rest.substr(0, rest.find(',')));
    const auto period = Period::parse(label);
    if (!period)
      throw InputError(std::string(source) + ":" + std::to_string(line_no) + ": bad period '" + std::string(label) + "'");
    Point p{*period, std::nullopt};
    if (!rest.empty() && rest != "NA" && rest != "." && rest != "NaN") {
      double v = 0;
      const auto res = std::from_chars(rest.data(), rest.data() + rest.size(), v);
      if (res.ec != std::errc{} || res.ptr != rest.data() + rest.size() || !std::isfinite(v))
        throw InputError(std::string(source) + ":" + std::to_string(line_no) + ": bad value '" + std::string(rest) + "'");
      p.value = v;
    }
    if (s.points.empty()) s.freq = period->freq;
    s.points.push_back(p);
  }
  if (!header) throw InputError(std::string(source) + ": empty series file");
  try {
    s.validate();
  } catch (const InputError& e) {
    throw InputError(std::string(source) + ": " + e.what());
  }
  s.meta.push_back("source=" + std::string(source));
  return s;
}

Series read_series_csv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open series " + path.string());
  return read_series_csv(in, path.string());
}

void write_series_csv(std::ostream& out, const Series& s) {
  out << "period,value\n";
  for (const auto& p : s.points) {
    out << p.period.label() << ',';
    if (p.value) out << format_double(*p.value);
    out << '\n';
  }
}

void write_series_csv(const std::filesystem::path& path, const Series& s) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path.string());
  write_series_csv(out, s);
}

}  // namespace rss
