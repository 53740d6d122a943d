#include "rss/timeseries.hpp"

#include <cmath>
#include <map>

#include "rss/error.hpp"

namespace rss {

std::vector<double> difference(std::span<const double> x, int order) {
  if (order < 1) throw InputError("difference order must be >= 1");
  if (x.size() <= static_cast<std::size_t>(order)) throw DegenerateDataError("series too short to difference");
  std::vector<double> out(x.begin(), x.end());
  for (int k = 0; k < order; ++k) {
    for (std::size_t i = 0; i + 1 < out.size(); ++i) out[i] = out[i + 1] - out[i];
    out.pop_back();
  }
  return out;
}

Series difference(const Series& s, int order) {
  const auto x = s.values_gap_free();
  const auto d = difference(x, order);
  Series out{s.freq, {}, s.meta};
  for (std::size_t i = 0; i < d.size(); ++i) out.points.push_back({s.points[i + order].period, d[i]});
  out.meta.push_back("difference order " + std::to_string(order));
  return out;
}

Series cumulative_sum(const Series& s) {
  const auto x = s.values_gap_free();
  Series out{s.freq, {}, s.meta};
  double acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    acc += x[i];
    out.points.push_back({s.points[i].period, acc});
  }
  return out;
}

Series resample_mean(const Series& s, Frequency target) {
  if (static_cast<int>(s.freq) >= static_cast<int>(target))
    throw InputError("resample_mean: source frequency must be finer than " + std::string(to_string(target)));
  Series out{target, {}, s.meta};
  if (s.points.empty()) return out;
  std::map<Period, std::pair<double, int>> acc;
  for (const auto& p : s.points) {
    auto& slot = acc[Period::from_date(p.period.first_day(), target)];
    if (p.value) {
      slot.first += *p.value;
      ++slot.second;
    }
  }
  const Period first = acc.begin()->first;
  const Period last = acc.rbegin()->first;
  for (Period p = first; p <= last; p = p + 1) {
    Point pt{p, std::nullopt};
    if (const auto it = acc.find(p); it != acc.end() && it->second.second > 0)
      pt.value = it->second.first / it->second.second;
    out.points.push_back(pt);
  }
  out.meta.push_back("resampled to " + std::string(to_string(target)) + " by within-period mean");
  return out;
}

Series lag(const Series& s, int k) {
  if (k < 1) throw InputError("lag must be >= 1");
  Series out = s;
  for (auto& p : out.points) p.period = p.period + k;
  out.meta.push_back("lagged " + std::to_string(k));
  return out;
}

Series log_growth(const Series& s, double scale) {
  Series out{s.freq, {}, s.meta};
  for (std::size_t i = 1; i < s.points.size(); ++i) {
    Point pt{s.points[i].period, std::nullopt};
    const auto& a = s.points[i - 1].value;
    const auto& b = s.points[i].value;
    if (a && b && s.points[i - 1].period + 1 == s.points[i].period) {
      if (*a <= 0 || *b <= 0) throw DegenerateDataError("log growth needs positive levels at " + s.points[i].period.label());
      pt.value = scale * (std::log(*b) - std::log(*a));
    }
    out.points.push_back(pt);
  }
  out.meta.push_back("log growth x" + format_double(scale));
  return out;
}

Series affine(const Series& s, double a, double b) {
  Series out = s;
  for (auto& p : out.points)
    if (p.value) p.value = a * *p.value + b;
  return out;
}

bool Aligned::contiguous() const {
  for (std::size_t i = 1; i < periods.size(); ++i)
    if (periods[i - 1] + 1 != periods[i]) return false;
  return true;
}

Aligned align(const std::vector<Series>& series) {
  if (series.empty()) throw InputError("align: no series");
  for (const auto& s : series)
    if (s.freq != series.front().freq) throw InputError("align: series have different frequencies");
  std::map<Period, std::vector<std::optional<double>>> rows;
  for (std::size_t j = 0; j < series.size(); ++j)
    for (const auto& p : series[j].points) {
      auto& row = rows[p.period];
      row.resize(series.size());
      row[j] = p.value;
    }
  Aligned out;
  std::vector<std::vector<double>> kept;
  for (const auto& [period, row] : rows) {
    if (row.size() != series.size()) continue;
    bool complete = true;
    for (const auto& v : row) complete = complete && v.has_value();
    if (!complete) continue;
    out.periods.push_back(period);
    std::vector<double> r;
    for (const auto& v : row) r.push_back(*v);
    kept.push_back(std::move(r));
  }
  if (kept.empty()) throw DegenerateDataError("align: series have no jointly observed periods");
  out.values.resize(static_cast<Eigen::Index>(kept.size()), static_cast<Eigen::Index>(series.size()));
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = 0; j < series.size(); ++j)
      out.values(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = kept[i][j];
  return out;
}

}  // namespace rss
