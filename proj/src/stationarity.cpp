#include "rss/stationarity.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <sstream>

#include "rss/error.hpp"
#include "rss/linalg.hpp"
#include "rss/timeseries.hpp"

namespace rss {

namespace {

// Dickey-Fuller tau distribution percentiles (Fuller 1976, Table 8.5.2; reprinted in Banerjee,
// Dolado, Galbraith and Hendry 1993, Table 4.2). Rows: sample sizes; columns: kAdfProbs.
constexpr std::array<double, 8> kAdfProbs{0.01, 0.025, 0.05, 0.10, 0.90, 0.95, 0.975, 0.99};
constexpr std::array<double, 6> kAdfSizes{25, 50, 100, 250, 500, 100000};
constexpr double kAdfConstant[6][8] = {
    {-3.75, -3.33, -3.00, -2.63, -0.37, 0.00, 0.34, 0.72},
    {-3.58, -3.22, -2.93, -2.60, -0.40, -0.03, 0.29, 0.66},
    {-3.51, -3.17, -2.89, -2.58, -0.42, -0.05, 0.26, 0.63},
    {-3.46, -3.14, -2.88, -2.57, -0.42, -0.06, 0.24, 0.62},
    {-3.44, -3.13, -2.87, -2.57, -0.43, -0.07, 0.24, 0.61},
    {-3.43, -3.12, -2.86, -2.57, -0.44, -0.07, 0.23, 0.60},
};
constexpr double kAdfTrend[6][8] = {
    {-4.38, -3.95, -3.60, -3.24, -1.14, -0.80, -0.50, -0.15},
    {-4.15, -3.80, -3.50, -3.18, -1.19, -0.87, -0.58, -0.24},
    {-4.04, -3.73, -3.45, -3.15, -1.22, -0.90, -0.62, -0.28},
    {-3.99, -3.69, -3.43, -3.13, -1.23, -0.92, -0.64, -0.31},
    {-3.98, -3.68, -3.42, -3.13, -1.24, -0.93, -0.65, -0.32},
    {-3.96, -3.66, -3.41, -3.12, -1.25, -0.94, -0.66, -0.33},
};

// Asymptotic upper-tail critical values (Kwiatkowski, Phillips, Schmidt and Shin 1992, Table 1).
constexpr std::array<double, 4> kKpssProbs{0.10, 0.05, 0.025, 0.01};
constexpr std::array<double, 4> kKpssLevel{0.347, 0.463, 0.574, 0.739};
constexpr std::array<double, 4> kKpssTrend{0.119, 0.146, 0.176, 0.216};

// Linear interpolation of ys over increasing xs, clamped at the ends.
template <std::size_t N>
double interp(const std::array<double, N>& xs, const std::array<double, N>& ys, double x) {
  if (x <= xs.front()) return ys.front();
  if (x >= xs.back()) return ys.back();
  const auto hi = static_cast<std::size_t>(std::upper_bound(xs.begin(), xs.end(), x) - xs.begin());
  const auto lo = hi - 1;
  const double w = (x - xs[lo]) / (xs[hi] - xs[lo]);
  return ys[lo] + w * (ys[hi] - ys[lo]);
}

std::array<double, 8> adf_row(std::size_t n, Deterministic det) {
  const auto& table = det == Deterministic::constant ? kAdfConstant : kAdfTrend;
  std::array<double, 8> row{};
  for (std::size_t j = 0; j < 8; ++j) {
    std::array<double, 6> col{};
    for (std::size_t i = 0; i < 6; ++i) col[i] = table[i][j];
    row[j] = interp(kAdfSizes, col, static_cast<double>(n));
  }
  return row;
}

double ols_t_ratio(const Eigen::MatrixXd& X, const Eigen::VectorXd& y, Eigen::Index col) {
  const auto fit = least_squares(X, y);
  const double dof = static_cast<double>(X.rows() - X.cols());
  const double s2 = fit.residuals.squaredNorm() / dof;
  const double se = std::sqrt(s2 * fit.xtx_inv(col, col));
  if (!(se > 0)) throw NumericalError("ADF regression has zero residual variance");
  return fit.coef(col, 0) / se;
}

}  // namespace

std::string_view to_string(Deterministic d) { return d == Deterministic::constant ? "constant" : "constant+trend"; }

Deterministic parse_deterministic(std::string_view s) {
  if (s == "c" || s == "constant" || s == "level") return Deterministic::constant;
  if (s == "ct" || s == "trend" || s == "constant+trend") return Deterministic::constant_trend;
  throw InputError("unknown deterministic terms '" + std::string(s) + "' (expected c or ct)");
}

std::string UnitRootResult::p_text() const {
  char buf[32];
  if (bound == PBound::below) {
    std::snprintf(buf, sizeof buf, "< %g", p_value);
  } else if (bound == PBound::above) {
    std::snprintf(buf, sizeof buf, "> %g", p_value);
  } else {
    std::snprintf(buf, sizeof buf, "%.3f", p_value);
  }
  return buf;
}

double adf_critical_value(double p, std::size_t n, Deterministic det) {
  return interp(kAdfProbs, adf_row(n, det), p);
}

double kpss_critical_value(double p, Deterministic det) {
  // kKpssProbs decreases, so interpolate on the reversed tables.
  const auto& cv = det == Deterministic::constant ? kKpssLevel : kKpssTrend;
  std::array<double, 4> probs{}, vals{};
  for (std::size_t i = 0; i < 4; ++i) {
    probs[i] = kKpssProbs[3 - i];
    vals[i] = cv[3 - i];
  }
  return interp(probs, vals, p);
}

UnitRootResult adf_test(std::span<const double> y, int lags, Deterministic det) {
  if (lags < 0) throw InputError("ADF lag order must be >= 0");
  if (y.size() < static_cast<std::size_t>(lags) + 10)
    throw DegenerateDataError("ADF needs at least lags + 10 observations");
  const auto dy = difference(y, 1);
  const auto n = dy.size();
  const auto L = static_cast<std::size_t>(lags);
  const auto rows = static_cast<Eigen::Index>(n - L);
  const Eigen::Index extra = det == Deterministic::constant ? 1 : 2;
  Eigen::MatrixXd X(rows, extra + 1 + lags);
  Eigen::VectorXd target(rows);
  for (std::size_t t = L; t < n; ++t) {
    const auto r = static_cast<Eigen::Index>(t - L);
    target(r) = dy[t];
    X(r, 0) = 1.0;
    if (extra == 2) X(r, 1) = static_cast<double>(t + 1);
    X(r, extra) = y[t];  // y_{t-1} relative to dy[t] = y[t+1] - y[t]
    for (std::size_t j = 1; j <= L; ++j) X(r, extra + static_cast<Eigen::Index>(j)) = dy[t - j];
  }
  UnitRootResult res;
  res.test = "ADF";
  res.lags = lags;
  res.det = det;
  res.n = n;
  res.statistic = ols_t_ratio(X, target, extra);

  const auto row = adf_row(n, det);
  if (res.statistic < row.front()) {
    res.p_value = kAdfProbs.front();
    res.bound = PBound::below;
  } else if (res.statistic > row.back()) {
    res.p_value = kAdfProbs.back();
    res.bound = PBound::above;
  } else {
    res.p_value = interp(row, kAdfProbs, res.statistic);
  }
  return res;
}

UnitRootResult kpss_test(std::span<const double> y, int trunc_lag, Deterministic det) {
  if (trunc_lag < 0) throw InputError("KPSS truncation lag must be >= 0");
  const auto n = y.size();
  if (n < 20) throw DegenerateDataError("KPSS needs at least 20 observations");
  if (static_cast<std::size_t>(trunc_lag) >= n) throw InputError("KPSS truncation lag must be below the sample size");

  const auto N = static_cast<Eigen::Index>(n);
  Eigen::VectorXd e(N);
  double scale = 0;
  for (std::size_t t = 0; t < n; ++t) scale = std::max(scale, std::abs(y[t]));
  if (det == Deterministic::constant) {
    double mean = 0;
    for (double v : y) mean += v;
    mean /= static_cast<double>(n);
    for (std::size_t t = 0; t < n; ++t) e(static_cast<Eigen::Index>(t)) = y[t] - mean;
  } else {
    Eigen::MatrixXd X(N, 2);
    Eigen::VectorXd v(N);
    for (Eigen::Index t = 0; t < N; ++t) {
      X(t, 0) = 1.0;
      X(t, 1) = static_cast<double>(t + 1);
      v(t) = y[static_cast<std::size_t>(t)];
    }
    e = least_squares(X, v).residuals.col(0);
  }

  const double nd = static_cast<double>(n);
  double s2 = e.squaredNorm() / nd;
  if (!(std::sqrt(s2) > 1e-9 * std::max(scale, 1e-300)))
    throw DegenerateDataError("KPSS: series has (numerically) zero variance");
  double partial = 0, eta = 0;
  for (Eigen::Index t = 0; t < N; ++t) {
    partial += e(t);
    eta += partial * partial;
  }
  eta /= nd * nd;
  for (int i = 1; i <= trunc_lag; ++i) {
    double acc = 0;
    for (Eigen::Index t = i; t < N; ++t) acc += e(t) * e(t - i);
    s2 += 2.0 / nd * (1.0 - static_cast<double>(i) / (trunc_lag + 1)) * acc;
  }
  if (!(s2 > 0)) throw NumericalError("KPSS long-run variance estimate is not positive");

  UnitRootResult res;
  res.test = "KPSS";
  res.lags = trunc_lag;
  res.det = det;
  res.n = n;
  res.statistic = eta / s2;
  const auto& cv = det == Deterministic::constant ? kKpssLevel : kKpssTrend;
  if (res.statistic < cv.front()) {
    res.p_value = kKpssProbs.front();
    res.bound = PBound::above;
  } else if (res.statistic > cv.back()) {
    res.p_value = kKpssProbs.back();
    res.bound = PBound::below;
  } else {
    res.p_value = interp(cv, kKpssProbs, res.statistic);
  }
  return res;
}

UnitRootResult adf_test(const Series& s, int lags, Deterministic det) {
  const auto v = s.values_gap_free();
  return adf_test(std::span<const double>(v), lags, det);
}

UnitRootResult kpss_test(const Series& s, int trunc_lag, Deterministic det) {
  const auto v = s.values_gap_free();
  return kpss_test(std::span<const double>(v), trunc_lag, det);
}

IntegrationOrder integration_order(std::span<const double> y, const IntegrationOptions& opt) {
  if (opt.max_order < 0) throw InputError("max integration order must be >= 0");
  IntegrationOrder out;
  std::vector<double> current(y.begin(), y.end());
  bool all_conflict = true;
  for (int d = 0; d <= opt.max_order; ++d) {
    if (d > 0) current = difference(current, 1);
    IntegrationStep step;
    step.d = d;
    step.adf = adf_test(current, opt.adf_lags, opt.det);
    step.kpss = kpss_test(current, opt.kpss_lag, opt.det);
    step.adf_stationary = step.adf.rejects(opt.alpha);
    step.kpss_stationary = !step.kpss.rejects(opt.alpha);
    out.steps.push_back(step);
    if (step.adf_stationary && step.kpss_stationary) {
      out.order = d;
      return out;
    }
    if (step.adf_stationary == step.kpss_stationary) all_conflict = false;
  }
  if (all_conflict) {
    out.order = opt.max_order;
    out.conflict = true;
    return out;
  }
  std::ostringstream msg;
  msg << "no integration order <= " << opt.max_order << " passes both tests:";
  for (const auto& s : out.steps)
    msg << " [d=" << s.d << " ADF " << s.adf.statistic << " p " << s.adf.p_text() << ", KPSS " << s.kpss.statistic
        << " p " << s.kpss.p_text() << "]";
  throw DegenerateDataError(msg.str());
}

}  // namespace rss
