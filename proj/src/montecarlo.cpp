#include "rss/montecarlo.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <functional>

#include "rss/error.hpp"
#include "rss/granger.hpp"
#include "rss/regress.hpp"
#include "rss/simulate.hpp"
#include "rss/stationarity.hpp"
#include "rss/var.hpp"

namespace rss::mc {

namespace {

using sim::Rng;

// Runs `body(rep, rng)` for each replication in parallel; each returns a vector of 0/1 outcomes
// (or -1 for an error). Per-replication seeds come from (master, stream + rep).
std::vector<std::vector<int>> replicate(const Config& cfg, std::uint64_t stream, int reps, std::size_t outcomes,
                                        const std::function<std::vector<int>(Rng&)>& body) {
  std::vector<std::vector<int>> results(static_cast<std::size_t>(reps));
  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(threads)
  for (int r = 0; r < reps; ++r) {
    Rng rng(sim::derive_seed(cfg.master_seed, stream * 1000003ull + static_cast<std::uint64_t>(r)));
    std::vector<int> out;
    try {
      out = body(rng);
    } catch (const Error&) {
      out.assign(outcomes, -1);
    }
    results[static_cast<std::size_t>(r)] = std::move(out);
  }
  return results;
}

Check rate(const std::string& name, const std::string& description, const std::vector<std::vector<int>>& results,
           std::size_t slot, double lo, double hi) {
  Check c;
  c.name = name;
  c.description = description;
  c.lo = lo;
  c.hi = hi;
  c.replications = static_cast<int>(results.size());
  int hits = 0;
  for (const auto& r : results) {
    if (r[slot] < 0)
      ++c.failures;
    else
      hits += r[slot];
  }
  c.value = static_cast<double>(hits) / static_cast<double>(results.size());
  return c;
}

std::span<const double> view(const std::vector<double>& v) { return {v.data(), v.size()}; }

Eigen::MatrixXd diag_chol(Eigen::Index K, double sd = 1.0) { return Eigen::MatrixXd::Identity(K, K) * sd; }

sim::VarProcess stable_var1() {
  sim::VarProcess proc;
  proc.intercept = Eigen::Vector2d(0.5, -0.2);
  Eigen::Matrix2d A;
  A << 0.5, 0.1, 0.2, 0.3;
  proc.lags = {A};
  proc.noise_chol = diag_chol(2);
  return proc;
}

sim::VarProcess var3_process() {
  sim::VarProcess proc;
  proc.intercept = Eigen::Vector2d(0.1, 0.1);
  Eigen::Matrix2d A1, A2, A3;
  A1 << 0.3, 0.1, 0.0, 0.2;
  A2 << 0.0, 0.1, 0.1, 0.1;
  A3 << 0.4, 0.0, 0.1, 0.4;
  proc.lags = {A1, A2, A3};
  proc.noise_chol = diag_chol(2);
  return proc;
}

}  // namespace

std::vector<Check> unit_root_size_power(const Config& cfg) {
  constexpr int reps = 1000;
  constexpr std::size_t n = 500;
  constexpr int adf_lags = 4;
  constexpr int kpss_lag = 3;
  const auto res = replicate(cfg, 1, reps, 4, [&](Rng& rng) {
    const auto rw = sim::random_walk(n, rng);
    const auto ar = sim::ar1(n, 0.5, rng);
    const auto wn = sim::white_noise(n, rng);
    const auto rw2 = sim::random_walk(n, rng);
    return std::vector<int>{adf_test(view(rw), adf_lags).rejects(0.05), adf_test(view(ar), adf_lags).rejects(0.05),
                            kpss_test(view(wn), kpss_lag).rejects(0.05), kpss_test(view(rw2), kpss_lag).rejects(0.05)};
  });
  return {rate("adf_size", "ADF rejection rate, random walk, n=500, 5%", res, 0, 0.03, 0.07),
          rate("adf_power", "ADF rejection rate, AR(1) phi=0.5, n=500, 5%", res, 1, 0.95, 1.0),
          rate("kpss_size", "KPSS rejection rate, white noise, n=500, 5%", res, 2, 0.03, 0.07),
          rate("kpss_power", "KPSS rejection rate, random walk, n=500, 5%", res, 3, 0.95, 1.0)};
}

std::vector<Check> integration_order_recovery(const Config& cfg) {
  constexpr int reps = 200;
  constexpr std::size_t n = 500;
  const IntegrationOptions opt{};
  const auto res = replicate(cfg, 2, reps, 2, [&](Rng& rng) {
    const auto rw = sim::random_walk(n, rng);
    const auto wn = sim::white_noise(n, rng);
    return std::vector<int>{integration_order(view(rw), opt).order == 1, integration_order(view(wn), opt).order == 0};
  });
  return {rate("integration_rw", "random walk classified I(1), n=500", res, 0, 0.95, 1.0),
          rate("integration_wn", "white noise classified I(0), n=500", res, 1, 0.95, 1.0)};
}

std::vector<Check> var_recovery(const Config& cfg) {
  std::vector<Check> out;
  {
    sim::VarProcess proc;
    proc.intercept = Eigen::Vector2d(0.2, -0.1);
    Eigen::Matrix2d A1, A2;
    A1 << 0.5, 0.2, -0.1, 0.4;
    A2 << -0.2, 0.1, 0.15, 0.2;
    proc.lags = {A1, A2};
    proc.noise_chol = diag_chol(2);
    Rng rng(sim::derive_seed(cfg.master_seed, 3));
    const auto data = sim::simulate_var(proc, 10000, rng);
    const auto m = fit_var(data, 2);
    double worst = std::abs(m.intercepts()(0) - 0.2);
    worst = std::max(worst, std::abs(m.intercepts()(1) + 0.1));
    worst = std::max(worst, (m.lag_matrix(1) - A1).cwiseAbs().maxCoeff());
    worst = std::max(worst, (m.lag_matrix(2) - A2).cwiseAbs().maxCoeff());
    Check c;
    c.name = "var2_recovery";
    c.description = "max |estimate - truth| over all VAR(2) coefficients, T=10000";
    c.value = worst;
    c.lo = 0.0;
    c.hi = 0.05;
    c.replications = 1;
    out.push_back(c);
  }
  const auto proc = var3_process();
  const auto res = replicate(cfg, 4, 100, 1, [&](Rng& rng) {
    const auto data = sim::simulate_var(proc, 2000, rng);
    return std::vector<int>{select_lag_aic(data, 20).best_p == 3};
  });
  out.push_back(rate("aic_selects_true_lag", "AIC selects p=3 for a VAR(3), T=2000, p_max=20", res, 0, 0.60, 1.0));
  return out;
}

std::vector<Check> diagnostics_size_power(const Config& cfg) {
  constexpr int reps = 1000;
  constexpr Eigen::Index T = 500;
  const auto stable = stable_var1();
  const auto var3 = var3_process();
  auto ar_errors = stable_var1();
  ar_errors.error_ar = 0.5;
  const auto res = replicate(cfg, 5, reps, 4, [&](Rng& rng) {
    const auto good = fit_var(sim::simulate_var(stable, T, rng), 1);
    const auto under = fit_var(sim::simulate_var(var3, T, rng), 1);
    const auto contaminated = fit_var(sim::simulate_var(ar_errors, T, rng), 1);
    return std::vector<int>{portmanteau_test(good, 16).p_value < 0.05, portmanteau_test(under, 16).p_value < 0.05,
                            breusch_godfrey_test(good, 5).p_value < 0.05,
                            breusch_godfrey_test(contaminated, 5).p_value < 0.05};
  });
  return {rate("portmanteau_size", "Portmanteau (h=16) rejection, correct VAR(1) fit, T=500", res, 0, 0.03, 0.07),
          rate("portmanteau_power", "Portmanteau (h=16) rejection, VAR(1) fit to VAR(3) data", res, 1, 0.80, 1.0),
          rate("bg_size", "Breusch-Godfrey (h=5) rejection, correct VAR(1) fit, T=500", res, 2, 0.03, 0.07),
          rate("bg_power", "Breusch-Godfrey (h=5) rejection, AR(1) errors (0.5)", res, 3, 0.80, 1.0)};
}

std::vector<Check> cusum_size_power(const Config& cfg) {
  constexpr int reps = 1000;
  constexpr Eigen::Index T = 200;
  const auto stable = stable_var1();
  const Eigen::Vector2d shift(5.0, 0.0);  // innovation sd is 1
  const auto with_own_lag = [&](double a) {
    auto proc = stable;
    proc.lags[0](0, 0) = a;
    return proc;
  };
  const auto flat = with_own_lag(0.0), mild = with_own_lag(0.3);
  const auto res = replicate(cfg, 6, reps, 5, [&](Rng& rng) {
    const auto calm = ols_cusum(fit_var(sim::simulate_var(stable, T, rng), 1));
    const auto broken = ols_cusum(fit_var(sim::simulate_var(flat, T, rng, 200, T / 2, shift), 1));
    const auto broken_mild = ols_cusum(fit_var(sim::simulate_var(mild, T, rng, 200, T / 2, shift), 1));
    const auto broken_ar = ols_cusum(fit_var(sim::simulate_var(stable, T, rng, 200, T / 2, shift), 1));
    return std::vector<int>{calm.equations[0].crossed, calm.equations[1].crossed, broken.equations[0].crossed,
                            broken_mild.equations[0].crossed, broken_ar.equations[0].crossed};
  });
  auto eq1 = rate("cusum_false_alarm_eq1", "", res, 0, 0.0, 0.07);
  auto eq2 = rate("cusum_false_alarm_eq2", "", res, 1, 0.0, 0.07);
  Check size = eq1;
  size.name = "cusum_false_alarm";
  size.description = "OLS-CUSUM boundary crossings per equation, stable VAR(1), T=200";
  size.value = 0.5 * (eq1.value + eq2.value);
  auto mild_check = rate("cusum_break_own_lag_0.3", "same break, own lag 0.3 (ungated)", res, 3, 0.0, 1.0);
  auto ar_check = rate("cusum_break_own_lag_0.5", "same break, own lag 0.5 (ungated)", res, 4, 0.0, 1.0);
  mild_check.gate = ar_check.gate = false;
  return {size,
          rate("cusum_break_detection", "OLS-CUSUM crossing after a 5 sigma mid-sample intercept break, own lag 0", res,
               2, 0.90, 1.0),
          mild_check, ar_check};
}

std::vector<Check> wald_size_power(const Config& cfg) {
  constexpr int reps = 1000;
  sim::VarProcess proc;
  proc.intercept = Eigen::Vector2d(0.0, 0.0);
  Eigen::Matrix2d A;
  A << 0.4, 0.0, 0.5, 0.3;  // x (var 0) drives y (var 1)
  proc.lags = {A};
  proc.noise_chol = diag_chol(2);
  const auto res = replicate(cfg, 7, reps, 2, [&](Rng& rng) {
    const auto m = fit_var(sim::simulate_var(proc, 500, rng), 1);
    return std::vector<int>{wald_test(m, 0, 1, 1).p_value < 0.05, wald_test(m, 1, 0, 1).p_value < 0.05};
  });
  return {rate("wald_power", "Wald x->y rejection, x drives y with 0.5 at lag 1, T=500", res, 0, 0.90, 1.0),
          rate("wald_size", "Wald y->x rejection (true null), T=500", res, 1, 0.03, 0.07)};
}

std::vector<Check> toda_yamamoto_size_power(const Config& cfg) {
  constexpr int reps = 500;
  constexpr std::size_t T = 200;
  TodaYamamotoOptions opt;
  opt.p_max = 12;
  const std::vector<std::string> names{"x", "y"};
  const auto to_matrix = [](const std::vector<double>& a, const std::vector<double>& b) {
    Eigen::MatrixXd d(static_cast<Eigen::Index>(a.size()), 2);
    for (std::size_t t = 0; t < a.size(); ++t) {
      d(static_cast<Eigen::Index>(t), 0) = a[t];
      d(static_cast<Eigen::Index>(t), 1) = b[t];
    }
    return d;
  };
  // slots: TY x->y, TY y->x, naive x->y, naive y->x, TY either direction
  const auto indep = replicate(cfg, 8, reps, 5, [&](Rng& rng) {
    const auto data = to_matrix(sim::random_walk(T, rng), sim::random_walk(T, rng));
    const auto rep = toda_yamamoto(data, names, opt);
    const auto naive = fit_var(data, rep.p, true, 0, names);
    const bool xy = rep.wald[0].p_value < 0.05, yx = rep.wald[1].p_value < 0.05;
    return std::vector<int>{xy, yx, wald_test(naive, 0, 1, rep.p).p_value < 0.05,
                            wald_test(naive, 1, 0, rep.p).p_value < 0.05, xy || yx};
  });
  const auto causal = replicate(cfg, 9, reps, 1, [&](Rng& rng) {
    const auto x = sim::random_walk(T + 1, rng);
    std::vector<double> y(T + 1, 0.0);
    for (std::size_t t = 2; t <= T; ++t) y[t] = y[t - 1] + 0.5 * (x[t - 1] - x[t - 2]) + rng.normal();
    const std::vector<double> xs(x.begin() + 1, x.end()), ys(y.begin() + 1, y.end());
    const auto rep = toda_yamamoto(to_matrix(xs, ys), names, opt);
    return std::vector<int>{rep.wald[0].p_value < 0.05};
  });

  auto ty_xy = rate("ty_spurious_x_to_y", "", indep, 0, 0.0, 0.10);
  auto ty_yx = rate("ty_spurious_y_to_x", "", indep, 1, 0.0, 0.10);
  auto nv_xy = rate("naive_spurious_x_to_y", "", indep, 2, 0.0, 1.0);
  auto nv_yx = rate("naive_spurious_y_to_x", "", indep, 3, 0.0, 1.0);
  Check spurious = ty_xy;
  spurious.name = "ty_spurious_rate";
  spurious.description = "Toda-Yamamoto rejection rate per direction, independent random walks, T=200";
  spurious.value = 0.5 * (ty_xy.value + ty_yx.value);
  Check gap;
  gap.name = "ty_vs_naive_gap";
  gap.description = "naive levels-VAR Granger rejection rate minus Toda-Yamamoto rate (must be positive)";
  gap.value = 0.5 * (nv_xy.value + nv_yx.value) - spurious.value;
  gap.lo = 1e-12;
  gap.hi = 1.0;
  gap.replications = reps;
  gap.failures = spurious.failures;
  return {spurious,
          rate("ty_spurious_either", "pairs with Toda-Yamamoto causality in either direction, independent random walks",
               indep, 4, 0.0, 0.10),
          gap,
          rate("ty_power", "Toda-Yamamoto detects x->y when dx drives dy (0.5 at lag 1), T=200", causal, 0, 0.80, 1.0)};
}

std::vector<Check> augmentation_noise(const Config& cfg) {
  constexpr int reps = 1000;
  constexpr Eigen::Index n = 74;
  const auto res = replicate(cfg, 10, reps, 1, [&](Rng& rng) {
    Eigen::MatrixXd X(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double f = 2.5 + rng.normal();
      X(i, 0) = 1.0;
      X(i, 1) = f;
      X(i, 2) = rng.normal();
      y(i) = 0.5 + f + 2.0 * rng.normal();
    }
    const auto fit = ols_fit(y, X, {"Constant", "forecast", "noise"});
    return std::vector<int>{fit.coefficients[2].p_value < 0.05};
  });
  return {rate("augmentation_noise_size", "pure-noise extra regressor significant at 5%, n=74", res, 0, 0.03, 0.07)};
}

std::vector<Check> run_all(const Config& cfg) {
  std::vector<Check> all;
  for (const auto& f : {unit_root_size_power, integration_order_recovery, var_recovery, diagnostics_size_power,
                        cusum_size_power, wald_size_power, toda_yamamoto_size_power, augmentation_noise}) {
    auto part = f(cfg);
    all.insert(all.end(), part.begin(), part.end());
  }
  return all;
}

}  // namespace rss::mc
