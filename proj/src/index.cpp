#include "rss/index.hpp"

#include <cmath>
#include <ostream>

#include "rss/error.hpp"

namespace rss {

PeriodCounts aggregate(const DailyCounts& daily, Frequency target) {
  PeriodCounts out;
  for (const auto& [day, c] : daily) out[Period::from_date(day, target)] += c;
  return out;
}

PeriodCounts aggregate(const PeriodCounts& counts, Frequency target) {
  PeriodCounts out;
  for (const auto& [p, c] : counts) {
    if (p.freq == Frequency::quarterly && target != Frequency::quarterly)
      throw InputError("cannot disaggregate quarterly counts");
    if (p.freq == Frequency::monthly && target == Frequency::daily)
      throw InputError("cannot disaggregate monthly counts");
    out[Period::from_date(p.first_day(), target)] += c;
  }
  return out;
}

Series compute_rss(const PeriodCounts& counts) {
  Series s;
  if (counts.empty()) return s;
  s.freq = counts.begin()->first.freq;
  const Period first = counts.begin()->first;
  const Period last = counts.rbegin()->first;
  auto it = counts.begin();
  for (Period p = first; p <= last; p = p + 1) {
    Point pt{p, std::nullopt};
    if (it != counts.end() && it->first == p) {
      const auto& c = it->second;
      if (c.n_articles > 0)
        pt.value = (static_cast<double>(c.excitement) - static_cast<double>(c.anxiety)) /
                   static_cast<double>(c.n_articles);
      ++it;
    }
    s.points.push_back(pt);
  }
  s.meta.push_back("rss = (excitement - anxiety) / n_articles");
  return s;
}

Series normalize(const Series& s) {
  const auto xs = s.observed();
  if (xs.size() < 2) throw DegenerateDataError("normalize needs at least two observations");
  double mean = 0;
  double scale = 0;
  for (double x : xs) {
    mean += x;
    scale = std::max(scale, std::abs(x));
  }
  mean /= static_cast<double>(xs.size());
  double ss = 0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
  if (!(sd > 1e-12 * scale)) throw DegenerateDataError("normalize: series has zero variance");
  Series out = s;
  for (auto& p : out.points)
    if (p.value) p.value = (*p.value - mean) / sd;
  out.meta.push_back("normalized: mean " + format_double(mean) + ", sd " + format_double(sd));
  return out;
}

std::vector<IndexRow> build_index(const PeriodCounts& counts) {
  const auto raw = compute_rss(counts);
  std::optional<Series> norm;
  try {
    norm = normalize(raw);
  } catch (const DegenerateDataError&) {
    // too few or constant values: rss_norm column stays empty
  }
  std::vector<IndexRow> rows;
  rows.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    IndexRow r{raw.points[i].period, {}, raw.points[i].value, std::nullopt};
    if (const auto it = counts.find(r.period); it != counts.end()) r.counts = it->second;
    if (norm) r.rss_norm = norm->points[i].value;
    rows.push_back(r);
  }
  return rows;
}

void write_index_csv(std::ostream& out, const std::vector<IndexRow>& rows) {
  out << "period,excitement,anxiety,n_articles,rss_raw,rss_norm\n";
  for (const auto& r : rows) {
    out << r.period.label() << ',' << r.counts.excitement << ',' << r.counts.anxiety << ',' << r.counts.n_articles
        << ',';
    if (r.rss_raw) out << format_double(*r.rss_raw);
    out << ',';
    if (r.rss_norm) out << format_double(*r.rss_norm);
    out << '\n';
  }
}

}  // namespace rss
