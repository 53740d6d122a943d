#pragma once

#include <Eigen/Dense>

#include <span>
#include <string>
#include <vector>

#include "rss/series.hpp"

namespace rss {

// x_t - x_{t-1}, applied `order` times. Labels of the later period are kept.
Series difference(const Series& s, int order = 1);
std::vector<double> difference(std::span<const double> x, int order = 1);

Series cumulative_sum(const Series& s);

// Mean of the source values falling in each target period. Periods with no source value are
// emitted as gaps. The source must be strictly finer than the target.
Series resample_mean(const Series& s, Frequency target);

// Shifts labels forward by k periods: the value observed at t is reported at t + k.
Series lag(const Series& s, int k);

// scale * (ln x_t - ln x_{t-1}); scale 400 gives annualized percent growth for quarterly data.
Series log_growth(const Series& s, double scale = 400.0);

// Applies x -> a * x + b to present values.
Series affine(const Series& s, double a, double b);

struct Aligned {
  std::vector<Period> periods;
  Eigen::MatrixXd values;  // rows = periods, columns = input series in order

  // True when consecutive rows are consecutive calendar periods.
  bool contiguous() const;
};

// Inner join on period labels; rows where any series is a gap are dropped.
// Throws InputError on mixed frequencies and DegenerateDataError on an empty intersection.
Aligned align(const std::vector<Series>& series);

}  // namespace rss
