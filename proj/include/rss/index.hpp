#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include "rss/counts.hpp"
#include "rss/series.hpp"

namespace rss {

using PeriodCounts = std::map<Period, EmotionCounts>;

// Sums daily counts into calendar periods of `target` frequency.
PeriodCounts aggregate(const DailyCounts& daily, Frequency target);
// Coarsens already aggregated counts (e.g. months into quarters).
PeriodCounts aggregate(const PeriodCounts& counts, Frequency target);

// (excitement - anxiety) / n_articles per period, ratio of sums. Every period between the first
// and last key is emitted; periods without articles are gaps.
Series compute_rss(const PeriodCounts& counts);

// (x - mean) / sd over present points, sample sd (n - 1). Gaps stay gaps.
// Throws DegenerateDataError for fewer than two points or zero variance.
Series normalize(const Series& s);

struct IndexRow {
  Period period;
  EmotionCounts counts;
  std::optional<double> rss_raw;
  std::optional<double> rss_norm;
};

std::vector<IndexRow> build_index(const PeriodCounts& counts);
// `period,excitement,anxiety,n_articles,rss_raw,rss_norm`
void write_index_csv(std::ostream& out, const std::vector<IndexRow>& rows);

}  // namespace rss
