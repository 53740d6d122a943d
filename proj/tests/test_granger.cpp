#include <doctest.h>

#include <Eigen/Dense>

#include "rss/error.hpp"
#include "rss/granger.hpp"
#include "rss/simulate.hpp"

namespace {

Eigen::MatrixXd stationary_pair(int T, std::uint64_t seed) {
  rss::sim::VarProcess proc;
  proc.intercept = Eigen::Vector2d(0.2, -0.1);
  Eigen::Matrix2d a;
  a << 0.4, 0.0, 0.5, 0.3;  // x drives y
  proc.lags = {a};
  proc.noise_chol = Eigen::Matrix2d::Identity();
  rss::sim::Rng rng(seed);
  return rss::sim::simulate_var(proc, T, rng);
}

Eigen::MatrixXd integrated_pair(int T, std::uint64_t seed) {
  const auto d = stationary_pair(T, seed);
  Eigen::MatrixXd y = d;
  for (Eigen::Index t = 1; t < T; ++t) y.row(t) = y.row(t - 1) + d.row(t);
  return y;
}

rss::TodaYamamotoOptions options() {
  rss::TodaYamamotoOptions o;
  o.p_max = 8;
  return o;
}

}  // namespace

TEST_CASE("stationary inputs take the m = 0 path, equal to a plain VAR(p) Wald test") {
  const auto data = stationary_pair(400, 3);
  const auto rep = rss::toda_yamamoto(data, {"x", "y"}, options());
  CHECK(rep.stage == "complete");
  CHECK(rep.m == 0);
  CHECK(rep.augmented_order == rep.p);
  REQUIRE(rep.wald.size() == 2);
  const auto plain = rss::fit_var(data, rep.p);
  const auto xy = rss::wald_test(plain, 0, 1, rep.p);
  const auto yx = rss::wald_test(plain, 1, 0, rep.p);
  CHECK(rep.wald[0].chi_sq == xy.chi_sq);
  CHECK(rep.wald[1].chi_sq == yx.chi_sq);
  CHECK(rep.wald[0].cause == "x");
  CHECK(rep.wald[0].effect == "y");
  CHECK(rep.wald[0].df == rep.p);
  CHECK(rep.wald[0].p_value < 0.01);  // x drives y
}

TEST_CASE("integrated inputs add m lags and test only the first p") {
  const auto data = integrated_pair(400, 3);
  const auto rep = rss::toda_yamamoto(data, {"x", "y"}, options());
  REQUIRE(rep.integration.size() == 2);
  CHECK(rep.integration[0].order == 1);
  CHECK(rep.integration[1].order == 1);
  CHECK(rep.m == 1);
  CHECK(rep.augmented_order == rep.p + 1);
  const auto augmented = rss::fit_var(data, rep.p + 1);
  CHECK(rep.wald[0].chi_sq == rss::wald_test(augmented, 0, 1, rep.p).chi_sq);
  CHECK(rep.wald[1].chi_sq == rss::wald_test(augmented, 1, 0, rep.p).chi_sq);
  CHECK(rep.wald[0].df == rep.p);
}

TEST_CASE("report bookkeeping") {
  const auto rep = rss::toda_yamamoto(integrated_pair(300, 5), {"rss", "stlfsi"}, options());
  CHECK(rep.lag_selection.aic.size() == 8);
  CHECK(rep.p_aic == rep.lag_selection.best_p);
  REQUIRE_FALSE(rep.escalation.empty());
  CHECK(rep.escalation.front().p == rep.p_aic);
  CHECK(rep.escalation.back().p == rep.p);
  CHECK(rep.p >= rep.p_aic);
  CHECK(rep.diagnostics_clean == rep.escalation.back().clean);
  CHECK(rep.escalation.back().portmanteau.lags == std::max(16, rep.p + 1));
  CHECK(rep.escalation.back().breusch_godfrey.lags == 5);
  CHECK(rep.stability.equations.size() == 2);
  CHECK(rep.stability.equations[0].equation == "rss");
  CHECK(rep.n_obs == 300);
}

TEST_CASE("Wald statistics are invariant to rescaling the series") {
  for (std::uint64_t seed : {6, 7}) {
    const auto data = integrated_pair(300, seed);
    Eigen::MatrixXd scaled = data;
    scaled.col(0) = data.col(0) * 1000.0;
    scaled.col(1) = (data.col(1).array() * 0.001 + 5.0).matrix();
    const auto a = rss::toda_yamamoto(data, {"x", "y"}, options());
    const auto b = rss::toda_yamamoto(scaled, {"x", "y"}, options());
    CHECK(a.p == b.p);
    CHECK(a.m == b.m);
    for (int d = 0; d < 2; ++d) {
      const double wa = a.wald[static_cast<std::size_t>(d)].chi_sq, wb = b.wald[static_cast<std::size_t>(d)].chi_sq;
      CHECK(std::abs(wa - wb) <= 1e-8 * std::max(1.0, std::abs(wa)));
    }
  }
}

TEST_CASE("failures carry the step name and the partial report") {
  // too short for VAR lag selection up to p_max
  const auto data = integrated_pair(40, 8);
  auto opt = options();
  opt.p_max = 20;
  try {
    rss::toda_yamamoto(data, {"x", "y"}, opt);
    FAIL("expected a pipeline error");
  } catch (const rss::PipelineError& e) {
    CHECK(e.step() == "lag selection");
    CHECK(e.partial().stage == "integration order");
    CHECK(e.partial().integration.size() == 2);
    CHECK(std::string(e.what()).rfind("lag selection: ", 0) == 0);
  }
  CHECK_THROWS_AS(rss::toda_yamamoto(Eigen::MatrixXd(50, 3), {"a", "b", "c"}, opt), rss::InputError);
}

TEST_CASE("series inputs are aligned and must be contiguous") {
  const auto data = integrated_pair(200, 9);
  rss::Series x, y;
  x.freq = y.freq = rss::Frequency::monthly;
  const auto start = *rss::Period::parse("1999-01");
  for (int t = 0; t < 200; ++t) {
    x.points.push_back({start + t, data(t, 0)});
    y.points.push_back({start + t + 3, t + 3 < 200 ? std::optional(data(t + 3, 1)) : std::nullopt});
  }
  const auto rep = rss::toda_yamamoto(x, y, {"x", "y"}, options());
  CHECK(rep.n_obs == 197);
  CHECK(rep.periods.front() == start + 3);

  y.points[50].value.reset();
  CHECK_THROWS_AS(rss::toda_yamamoto(x, y, {"x", "y"}, options()), rss::DegenerateDataError);
}
