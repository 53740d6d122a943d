#include "rss/granger.hpp"

#include "rss/distributions.hpp"
#include "rss/linalg.hpp"
#include "rss/timeseries.hpp"

namespace rss {

WaldResult wald_test(const VarModel& model, int cause, int effect, int p) {
  if (p < 1) throw InputError("Wald test needs at least one restriction (p >= 1)");
  if (p > model.p) throw InputError("Wald test restricts more lags than the model has");
  if (cause < 0 || cause >= model.K || effect < 0 || effect >= model.K) throw InputError("Wald test: bad variable index");
  if (cause == effect) throw InputError("Wald test: cause and effect must be different variables");

  const Eigen::MatrixXd V = model.equation_covariance(effect);
  Eigen::VectorXd beta(p);
  Eigen::MatrixXd Vr(p, p);
  for (int a = 1; a <= p; ++a) {
    beta(a - 1) = model.coef(model.coef_row(a, cause), effect);
    for (int b = 1; b <= p; ++b) Vr(a - 1, b - 1) = V(model.coef_row(a, cause), model.coef_row(b, cause));
  }
  WaldResult r;
  r.cause = model.names[static_cast<std::size_t>(cause)];
  r.effect = model.names[static_cast<std::size_t>(effect)];
  r.chi_sq = beta.dot(spd_solve(Vr, beta).col(0));
  r.df = p;
  r.p_value = chi_square_sf(r.chi_sq, p);
  return r;
}

GrangerReport toda_yamamoto(const Eigen::MatrixXd& data, const std::vector<std::string>& names,
                            const TodaYamamotoOptions& opt) {
  if (data.cols() != 2 || names.size() != 2) throw InputError("Toda-Yamamoto expects exactly two series");
  if (opt.p_max < 1) throw InputError("p_max must be >= 1");
  GrangerReport rep;
  rep.names = names;
  rep.n_obs = data.rows();
  rep.options = opt;
  rep.stage = "start";

  std::string step = "integration order";
  try {
    for (Eigen::Index j = 0; j < 2; ++j) {
      const Eigen::VectorXd col = data.col(j);
      rep.integration.push_back(integration_order(std::span<const double>(col.data(), static_cast<std::size_t>(col.size())),
                                                  opt.integration));
      rep.m = std::max(rep.m, rep.integration.back().order);
    }
    rep.stage = step;

    step = "lag selection";
    rep.lag_selection = select_lag_aic(data, opt.p_max, true);
    rep.p_aic = rep.lag_selection.best_p;
    rep.stage = step;

    step = "stability";
    rep.stability = ols_cusum(fit_var(data, rep.p_aic, true, 0, names));
    rep.stage = step;

    step = "autocorrelation";
    int p = rep.p_aic;
    for (;;) {
      const auto model = fit_var(data, p, true, 0, names);
      EscalationStep e;
      e.p = p;
      e.portmanteau = portmanteau_test(model, std::max(opt.portmanteau_h, p + 1));
      e.breusch_godfrey = breusch_godfrey_test(model, opt.bg_h);
      e.clean = e.portmanteau.p_value >= opt.alpha && e.breusch_godfrey.p_value >= opt.alpha;
      rep.escalation.push_back(e);
      if (e.clean || !opt.escalate) break;
      if (p == opt.p_max)
        throw DegenerateDataError("residual autocorrelation persists up to p_max = " + std::to_string(opt.p_max));
      ++p;
    }
    rep.p = p;
    rep.diagnostics_clean = rep.escalation.back().clean;
    rep.stage = step;

    step = "augmented VAR";
    rep.augmented_order = rep.p + rep.m;
    const auto augmented = fit_var(data, rep.augmented_order, true, 0, names);
    rep.stage = step;

    step = "Wald tests";
    rep.wald.push_back(wald_test(augmented, 0, 1, rep.p));
    rep.wald.push_back(wald_test(augmented, 1, 0, rep.p));
    rep.stage = "complete";
  } catch (const Error& e) {
    throw PipelineError(e, step, rep);
  }
  return rep;
}

GrangerReport toda_yamamoto(const Series& x, const Series& y, const std::vector<std::string>& names,
                            const TodaYamamotoOptions& opt) {
  const auto aligned = align({x, y});
  if (!aligned.contiguous())
    throw DegenerateDataError("aligned sample is not a contiguous run of periods (gaps inside the window)");
  auto rep = toda_yamamoto(aligned.values, names, opt);
  rep.periods = aligned.periods;
  return rep;
}

}  // namespace rss
