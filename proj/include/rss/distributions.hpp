#pragma once

namespace rss {

// Upper-tail probabilities. Arguments outside the support return 1 (or 0 for +inf).
double chi_square_sf(double x, double df);
double f_sf(double x, double df1, double df2);
// Two-sided p-value of a t statistic.
double t_two_sided(double t, double df);
double normal_quantile(double p);

}  // namespace rss
