#pragma once

#include <Eigen/Dense>

#include <memory>
#include <string>
#include <vector>

#include "rss/error.hpp"
#include "rss/series.hpp"
#include "rss/stationarity.hpp"
#include "rss/var.hpp"

namespace rss {

struct WaldResult {
  std::string cause;
  std::string effect;
  double chi_sq = 0;
  int df = 0;
  double p_value = 1;
};

// Joint test that variable `cause` has zero coefficients at lags 1..p in equation `effect`.
// Later lags of the model (the augmentation lags) are left unrestricted.
WaldResult wald_test(const VarModel& model, int cause, int effect, int p);

struct TodaYamamotoOptions {
  int p_max = 20;
  double alpha = 0.05;
  IntegrationOptions integration{};
  int portmanteau_h = 16;  // raised to p + 1 when the lag order reaches it
  int bg_h = 5;
  bool escalate = true;    // raise p until both autocorrelation tests are clean
};

struct EscalationStep {
  int p = 0;
  DiagnosticResult portmanteau;
  DiagnosticResult breusch_godfrey;
  bool clean = false;
};

struct GrangerReport {
  std::vector<std::string> names;  // {x, y}
  std::vector<Period> periods;     // aligned sample, empty when built from a raw matrix
  Eigen::Index n_obs = 0;
  TodaYamamotoOptions options;

  std::vector<IntegrationOrder> integration;  // one per variable
  int m = 0;
  LagSelection lag_selection;
  int p_aic = 0;
  CusumResult stability;
  std::vector<EscalationStep> escalation;
  int p = 0;
  bool diagnostics_clean = false;
  int augmented_order = 0;  // p + m
  std::vector<WaldResult> wald;  // x -> y, then y -> x

  // Name of the last completed step; "complete" when the pipeline finished.
  std::string stage;
};

// Carries the partial audit trail of a pipeline that stopped at `step`.
class PipelineError : public Error {
 public:
  PipelineError(const Error& cause, std::string step, GrangerReport partial)
      : Error(cause.kind(), step + ": " + cause.what()),
        step_(std::move(step)),
        partial_(std::make_shared<GrangerReport>(std::move(partial))) {}
  const std::string& step() const noexcept { return step_; }
  const GrangerReport& partial() const noexcept { return *partial_; }

 private:
  std::string step_;
  std::shared_ptr<const GrangerReport> partial_;
};

// Toda-Yamamoto: integration orders (m), AIC lag (p), OLS-CUSUM stability, autocorrelation checks
// with lag escalation, VAR(p + m) in levels, Wald tests on the first p lags in both directions.
// `data` columns are {x, y}.
GrangerReport toda_yamamoto(const Eigen::MatrixXd& data, const std::vector<std::string>& names,
                            const TodaYamamotoOptions& opt = {});
// Aligns the two series (inner join, gaps dropped) and requires the result to be contiguous.
GrangerReport toda_yamamoto(const Series& x, const Series& y, const std::vector<std::string>& names,
                            const TodaYamamotoOptions& opt = {});

}  // namespace rss
