#include "rss/report.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

namespace rss {

namespace {

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string lpad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

std::string p_format(double p) {
  char buf[32];
  if (p < 0.001)
    std::snprintf(buf, sizeof buf, "%.1e", p);
  else
    std::snprintf(buf, sizeof buf, "%.4f", p);
  return buf;
}

Json matrix_json(const Eigen::MatrixXd& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

const char* bound_name(PBound b) {
  switch (b) {
    case PBound::below: return "below";
    case PBound::above: return "above";
    default: return "exact";
  }
}

}  // namespace

std::string stars(double p) {
  if (p < 0.01) return "***";
  if (p < 0.05) return "**";
  if (p < 0.1) return "*";
  return "";
}

std::string fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  std::string s = buf;
  if (s.starts_with("-") && s.find_first_not_of("-0.") == std::string::npos) s.erase(0, 1);
  return s;
}

Json to_json(const UnitRootResult& r) {
  return Json{{"test", r.test},
              {"statistic", r.statistic},
              {"p_value", r.p_value},
              {"p_is_bound", r.bound != PBound::exact},
              {"p_bound", bound_name(r.bound)},
              {"p_text", r.p_text()},
              {"lags", r.lags},
              {"det_terms", std::string(to_string(r.det))},
              {"n", r.n}};
}

Json to_json(const IntegrationOrder& r) {
  Json steps = Json::array();
  for (const auto& s : r.steps)
    steps.push_back(Json{{"d", s.d},
                         {"adf", to_json(s.adf)},
                         {"kpss", to_json(s.kpss)},
                         {"adf_stationary", s.adf_stationary},
                         {"kpss_stationary", s.kpss_stationary}});
  return Json{{"order", r.order}, {"conflict", r.conflict}, {"steps", steps}};
}

Json to_json(const DiagnosticResult& r) {
  return Json{{"test", r.test_name}, {"statistic", r.statistic}, {"df", r.df}, {"p_value", r.p_value}, {"lags", r.lags}};
}

Json to_json(const LagSelection& r) {
  Json table = Json::array();
  for (std::size_t i = 0; i < r.aic.size(); ++i) table.push_back(Json{{"lag", i + 1}, {"aic", r.aic[i]}});
  return Json{{"selected", r.best_p}, {"t_eff", r.t_eff}, {"table", table}};
}

Json to_json(const CusumResult& r) {
  Json eqs = Json::array();
  for (const auto& e : r.equations)
    eqs.push_back(Json{{"equation", e.equation}, {"sup_abs", e.sup_abs}, {"crossed", e.crossed}});
  return Json{{"boundary", r.boundary}, {"stable", r.stable()}, {"equations", eqs}};
}

Json to_json(const WaldResult& r) {
  return Json{{"direction", r.cause + " -> " + r.effect},
              {"cause", r.cause},
              {"effect", r.effect},
              {"chi_sq", r.chi_sq},
              {"df", r.df},
              {"p_value", r.p_value}};
}

Json to_json(const VarModel& m) {
  Json eqs = Json::array();
  for (int i = 0; i < m.K; ++i) {
    const auto V = m.equation_covariance(i);
    Json coefs = Json::array();
    if (m.intercept)
      coefs.push_back(Json{{"term", "const"}, {"estimate", m.coef(0, i)}, {"std_error", std::sqrt(V(0, 0))}});
    for (int l = 1; l <= m.p; ++l)
      for (int j = 0; j < m.K; ++j) {
        const auto row = m.coef_row(l, j);
        coefs.push_back(Json{{"term", m.names[static_cast<std::size_t>(j)] + ".l" + std::to_string(l)},
                             {"estimate", m.coef(row, i)},
                             {"std_error", std::sqrt(V(row, row))}});
      }
    eqs.push_back(Json{{"equation", m.names[static_cast<std::size_t>(i)]}, {"coefficients", coefs}});
  }
  return Json{{"K", m.K}, {"p", m.p}, {"t_eff", m.t_eff()}, {"equations", eqs}, {"sigma", matrix_json(m.sigma)}};
}

Json to_json(const GrangerReport& r) {
  Json j;
  j["variables"] = r.names;
  j["n_obs"] = r.n_obs;
  if (!r.periods.empty()) {
    j["first_period"] = r.periods.front().label();
    j["last_period"] = r.periods.back().label();
  }
  j["options"] = Json{{"p_max", r.options.p_max},
                      {"alpha", r.options.alpha},
                      {"max_integration_order", r.options.integration.max_order},
                      {"adf_lags", r.options.integration.adf_lags},
                      {"kpss_lag", r.options.integration.kpss_lag},
                      {"det_terms", std::string(to_string(r.options.integration.det))},
                      {"portmanteau_h", r.options.portmanteau_h},
                      {"bg_h", r.options.bg_h}};
  j["stage"] = r.stage;
  Json integ = Json::object();
  for (std::size_t i = 0; i < r.integration.size(); ++i) integ[r.names[i]] = to_json(r.integration[i]);
  j["integration"] = integ;
  j["m"] = r.m;
  if (!r.lag_selection.aic.empty()) j["lag_selection"] = to_json(r.lag_selection);
  j["p_aic"] = r.p_aic;
  if (!r.stability.equations.empty()) j["stability"] = to_json(r.stability);
  Json esc = Json::array();
  for (const auto& e : r.escalation)
    esc.push_back(Json{{"p", e.p},
                       {"portmanteau", to_json(e.portmanteau)},
                       {"breusch_godfrey", to_json(e.breusch_godfrey)},
                       {"clean", e.clean}});
  j["autocorrelation"] = esc;
  j["p"] = r.p;
  j["diagnostics_clean"] = r.diagnostics_clean;
  j["augmented_order"] = r.augmented_order;
  Json wald = Json::array();
  for (const auto& w : r.wald) wald.push_back(to_json(w));
  j["wald"] = wald;
  return j;
}

Json to_json(const OlsResult& r) {
  Json coefs = Json::array();
  for (const auto& c : r.coefficients)
    coefs.push_back(Json{{"name", c.name},
                         {"estimate", c.estimate},
                         {"std_error", c.std_error},
                         {"t_stat", c.t_stat},
                         {"p_value", c.p_value}});
  return Json{{"n", r.n},
              {"coefficients", coefs},
              {"r_squared", r.r_squared},
              {"adj_r_squared", r.adj_r_squared},
              {"residual_se", r.residual_se},
              {"df_resid", r.df_resid},
              {"f_stat", r.f_stat},
              {"f_df", {r.f_df1, r.f_df2}},
              {"f_p_value", r.f_p_value}};
}

Json to_json(const AugmentationStudy& s) {
  Json j{{"dependent", s.actual_name},
         {"restricted", to_json(s.restricted)},
         {"augmented", to_json(s.augmented)},
         {"adj_r2_incremental_ratio", s.adj_r2_incremental_ratio}};
  if (!s.periods.empty()) {
    j["first_period"] = s.periods.front().label();
    j["last_period"] = s.periods.back().label();
  }
  return j;
}

Json to_json(const ScanStats& s) {
  return Json{{"records", s.records},
              {"kept", s.kept},
              {"dropped", s.dropped},
              {"parse_errors", s.parse_errors},
              {"concept_absent", s.concept_absent},
              {"seconds", s.seconds},
              {"articles_per_second", s.articles_per_second()},
              {"first_errors", s.first_errors}};
}

void write_granger_text(std::ostream& out, const GrangerReport& r) {
  const auto& x = r.names[0];
  const auto& y = r.names[1];
  out << "Toda-Yamamoto Granger causality: " << x << ", " << y << "\n";
  out << "Observations: " << r.n_obs;
  if (!r.periods.empty()) out << " (" << r.periods.front().label() << " to " << r.periods.back().label() << ")";
  out << "\n\n";

  out << "Stationarity tests (ADF lag " << r.options.integration.adf_lags << ", KPSS truncation lag "
      << r.options.integration.kpss_lag << ", " << to_string(r.options.integration.det) << ")\n";
  out << pad("Variable", 22) << lpad("ADF", 9) << lpad("p-value", 10) << lpad("KPSS", 9) << lpad("p-value", 10) << "\n";
  for (std::size_t i = 0; i < r.integration.size(); ++i) {
    for (const auto& s : r.integration[i].steps) {
      const std::string label = r.names[i] + (s.d == 0 ? " Level" : s.d == 1 ? " Diff" : " Diff" + std::to_string(s.d));
      out << pad(label, 22) << lpad(fixed(s.adf.statistic, 2), 9) << lpad(s.adf.p_text(), 10)
          << lpad(fixed(s.kpss.statistic, 3), 9) << lpad(s.kpss.p_text(), 10) << "\n";
    }
    out << "  integration order " << r.names[i] << ": " << r.integration[i].order
        << (r.integration[i].conflict ? " (tests conflict at every order; conservative choice)" : "") << "\n";
  }
  out << "m = " << r.m << "\n\n";

  if (!r.lag_selection.aic.empty()) {
    out << "AIC by lag (common sample, T_eff = " << r.lag_selection.t_eff << ")\n";
    out << pad("Lags", 6) << lpad("AIC", 10) << "\n";
    for (std::size_t i = 0; i < r.lag_selection.aic.size(); ++i)
      out << pad(std::to_string(i + 1), 6) << lpad(fixed(r.lag_selection.aic[i], 3), 10)
          << (static_cast<int>(i + 1) == r.p_aic ? "  <- min" : "") << "\n";
    out << "Selected lag (AIC): " << r.p_aic << "\n\n";
  }

  if (!r.stability.equations.empty()) {
    out << "OLS-CUSUM stability (5% boundary " << fixed(r.stability.boundary, 3) << ")\n";
    for (const auto& e : r.stability.equations)
      out << "  " << pad(e.equation, 20) << " sup|W| = " << fixed(e.sup_abs, 3) << (e.crossed ? "  CROSSED" : "  ok")
          << "\n";
    out << "Stability: " << (r.stability.stable() ? "no boundary crossing" : "FAILED (boundary crossed)") << "\n\n";
  }

  if (!r.escalation.empty()) {
    out << "Residual autocorrelation (null: none)\n";
    out << pad("p", 4) << lpad("Portmanteau", 13) << lpad("d.f.", 6) << lpad("p-value", 10) << lpad("Breusch-Godfrey", 17)
        << lpad("d.f.", 6) << lpad("p-value", 10) << "\n";
    for (const auto& e : r.escalation)
      out << pad(std::to_string(e.p), 4) << lpad(fixed(e.portmanteau.statistic, 2), 13)
          << lpad(std::to_string(e.portmanteau.df), 6) << lpad(p_format(e.portmanteau.p_value), 10)
          << lpad(fixed(e.breusch_godfrey.statistic, 2), 17) << lpad(std::to_string(e.breusch_godfrey.df), 6)
          << lpad(p_format(e.breusch_godfrey.p_value), 10) << (e.clean ? "  clean" : "") << "\n";
    out << "Lag order used: p = " << r.p << "; augmented VAR order p + m = " << r.augmented_order << "\n\n";
  }

  if (!r.wald.empty()) {
    out << "Wald tests of Granger causality (first p lags restricted)\n";
    out << pad("Direction", 28) << lpad("Chi-Sq", 9) << lpad("d.f.", 6) << lpad("p-value", 12) << "\n";
    for (const auto& w : r.wald)
      out << pad(w.cause + " -> " + w.effect, 28) << lpad(fixed(w.chi_sq, 1), 9) << lpad(std::to_string(w.df), 6)
          << lpad(p_format(w.p_value) + stars(w.p_value), 12) << "\n";
    out << "Note: *p<0.1; **p<0.05; ***p<0.01\n";
  }
  if (r.stage != "complete") out << "\nPipeline stopped after: " << r.stage << "\n";
}

void write_ols_text(std::ostream& out, const OlsResult& r, const std::string& dependent) {
  const std::string rule(48, '-');
  out << "Dependent variable: " << dependent << "\n" << rule << "\n";
  // Slopes first, intercept last.
  auto row = [&](const Coefficient& c) {
    out << pad(c.name, 22) << fixed(c.estimate, 3) << stars(c.p_value) << " (" << fixed(c.std_error, 3) << ")\n";
  };
  for (std::size_t i = 1; i < r.coefficients.size(); ++i) row(r.coefficients[i]);
  if (!r.coefficients.empty()) row(r.coefficients[0]);
  out << rule << "\n";
  out << pad("Observations", 22) << r.n << "\n";
  out << pad("R2", 22) << fixed(r.r_squared, 3) << "\n";
  out << pad("Adjusted R2", 22) << fixed(r.adj_r_squared, 3) << "\n";
  out << pad("Residual Std. Error", 22) << fixed(r.residual_se, 3) << " (df = " << r.df_resid << ")\n";
  out << pad("F Statistic", 22) << fixed(r.f_stat, 3) << stars(r.f_p_value) << " (df = " << r.f_df1 << "; " << r.f_df2
      << ")\n";
  out << rule << "\nNote: *p<0.1; **p<0.05; ***p<0.01\n";
}

void write_augmentation_text(std::ostream& out, const AugmentationStudy& s) {
  if (!s.periods.empty())
    out << "Sample: " << s.periods.front().label() << " to " << s.periods.back().label() << "\n\n";
  out << "Restricted regression\n";
  write_ols_text(out, s.restricted, s.actual_name);
  out << "\nAugmented regression (" << s.extra_name << " lagged)\n";
  write_ols_text(out, s.augmented, s.actual_name);
  out << "\nAdjusted R2: " << fixed(s.restricted.adj_r_squared, 3) << " -> " << fixed(s.augmented.adj_r_squared, 3)
      << "; incremental ratio (adjR2_aug - adjR2_base) / adjR2_base = " << fixed(100.0 * s.adj_r2_incremental_ratio, 1)
      << "%\n";
}

void write_aic_csv(std::ostream& out, const LagSelection& r) {
  out << "lag,aic\n";
  for (std::size_t i = 0; i < r.aic.size(); ++i) out << i + 1 << ',' << format_double(r.aic[i]) << '\n';
}

void write_cusum_csv(std::ostream& out, const CusumProcess& p, double boundary) {
  out << "t,W,boundary\n";
  for (std::size_t i = 0; i < p.t.size(); ++i)
    out << format_double(p.t[i]) << ',' << format_double(p.w[i]) << ',' << format_double(boundary) << '\n';
}

}  // namespace rss
