#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include <boost/math/distributions/students_t.hpp>

#include "rss/distributions.hpp"
#include "rss/error.hpp"
#include "rss/regress.hpp"
#include "rss/report.hpp"
#include "ols_oracle.hpp"

using rss::Period;

namespace {

bool close(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(1.0, std::abs(b)); }

rss::Series quarterly(const std::vector<double>& v, const char* start = "1996-Q1") {
  rss::Series s;
  s.freq = rss::Frequency::quarterly;
  for (std::size_t i = 0; i < v.size(); ++i) s.points.push_back({*Period::parse(start) + static_cast<int>(i), v[i]});
  return s;
}

}  // namespace

TEST_CASE("perfect fit") {
  Eigen::MatrixXd X(3, 2);
  X << 1, 1, 1, 2, 1, 3;
  const auto r = rss::ols_fit(Eigen::Vector3d(1, 2, 3), X, {"Constant", "x"});
  CHECK(r.coefficient("x").estimate == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(r.coefficient("Constant").estimate) < 1e-12);
  CHECK(r.r_squared == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.df_resid == 1);
}

TEST_CASE("OLS matches a normal-equations oracle on random fixtures") {
  std::mt19937_64 rng(20141001);
  std::normal_distribution<double> z;
  for (int fixture = 0; fixture < 20; ++fixture) {
    CAPTURE(fixture);
    const int n = 15 + static_cast<int>(rng() % 200);
    const int k = 2 + static_cast<int>(rng() % 5);
    Eigen::MatrixXd X(n, k);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      X(i, 0) = 1.0;
      for (int j = 1; j < k; ++j) X(i, j) = z(rng) * (1 + j) + 0.3 * j;
      y(i) = 0.5 + 2.0 * z(rng);
      for (int j = 1; j < k; ++j) y(i) += (j % 2 ? 0.7 : -0.4) * X(i, j);
    }
    std::vector<std::string> names{"Constant"};
    for (int j = 1; j < k; ++j) names.push_back("x" + std::to_string(j));
    const auto r = rss::ols_fit(y, X, names);
    const auto o = oracle::normal_equations(y, X);
    for (int j = 0; j < k; ++j) {
      const auto& c = r.coefficients[static_cast<std::size_t>(j)];
      CHECK(close(c.estimate, o.beta[static_cast<std::size_t>(j)], 1e-8));
      CHECK(close(c.std_error, o.se[static_cast<std::size_t>(j)], 1e-8));
      CHECK(close(c.t_stat, c.estimate / c.std_error, 1e-12));
      CHECK(close(c.p_value, 2 * boost::math::cdf(boost::math::complement(boost::math::students_t(n - k), std::abs(c.t_stat))), 1e-10));
    }
    CHECK(close(r.r_squared, o.r2, 1e-8));
    CHECK(close(r.adj_r_squared, o.adj_r2, 1e-8));
    CHECK(close(r.residual_se, o.sigma, 1e-8));
    CHECK(close(r.f_stat, o.f, 1e-8));

    // identities
    CHECK(r.df_resid == n - k);
    CHECK(r.f_df1 == k - 1);
    CHECK(r.f_df2 == n - k);
    CHECK(close(r.adj_r_squared, 1 - (1 - r.r_squared) * (n - 1) / (n - k), 1e-8));
    CHECK(close(r.f_stat, (r.r_squared / (k - 1)) / ((1 - r.r_squared) / (n - k)), 1e-8));
    CHECK(close(r.f_p_value, rss::f_sf(r.f_stat, k - 1, n - k), 1e-12));
    CHECK(r.r_squared >= 0);
    CHECK(r.r_squared <= 1);
    CHECK(r.adj_r_squared <= r.r_squared);
    for (int j = 0; j < k; ++j) CHECK(std::abs(X.col(j).dot(r.residuals)) <= 1e-10 * std::max(1.0, X.col(j).norm() * y.norm()));
    CHECK((r.fitted + r.residuals - y).norm() < 1e-10 * y.norm());
  }
}

TEST_CASE("adding a regressor never lowers R2") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 30;
    Eigen::MatrixXd X(n, 4);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      X.row(i) << 1.0, z(rng), z(rng), z(rng);
      y(i) = X(i, 1) + z(rng);
    }
    const auto small = rss::ols_fit(y, X.leftCols(2), {"Constant", "a"});
    const auto big = rss::ols_fit(y, X, {"Constant", "a", "b", "c"});
    CHECK(big.r_squared >= small.r_squared);
  }
}

TEST_CASE("ols preconditions") {
  Eigen::MatrixXd X(3, 2);
  X << 1, 1, 1, 2, 1, 3;
  CHECK_THROWS_AS(rss::ols_fit(Eigen::Vector3d(1, 2, 3), X, {"Constant"}), rss::InputError);
  Eigen::MatrixXd no_intercept = X;
  no_intercept(1, 0) = 2;
  CHECK_THROWS_AS(rss::ols_fit(Eigen::Vector3d(1, 2, 3), no_intercept, {"Constant", "x"}), rss::InputError);
  Eigen::MatrixXd wide(2, 2);
  wide << 1, 1, 1, 2;
  CHECK_THROWS_AS(rss::ols_fit(Eigen::Vector2d(1, 2), wide, {"Constant", "x"}), rss::DegenerateDataError);
  Eigen::MatrixXd rank_deficient(4, 3);
  rank_deficient << 1, 1, 2, 1, 2, 4, 1, 3, 6, 1, 4, 8;
  CHECK_THROWS(rss::ols_fit(Eigen::Vector4d(1, 2, 3, 5), rank_deficient, {"Constant", "x", "2x"}));
}

TEST_CASE("augmentation study runs both fits on the same rows") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> z;
  std::vector<double> f, a, e;
  for (int t = 0; t < 80; ++t) {
    e.push_back(z(rng));
    f.push_back(2.0 + z(rng));
  }
  for (int t = 0; t < 80; ++t) a.push_back(0.5 + f[static_cast<std::size_t>(t)] + (t > 0 ? 0.8 * e[static_cast<std::size_t>(t - 1)] : 0) + z(rng));
  auto actual = quarterly(a), forecast = quarterly(f), extra = quarterly(e);
  forecast.points[10].value.reset();

  const auto s = rss::augmentation_study(actual, forecast, extra, 1);
  // row 0 has no lagged extra, row 10 has no forecast
  CHECK(s.periods.size() == 78);
  CHECK(s.periods.front() == *Period::parse("1996-Q2"));
  CHECK(s.restricted.n == 78);
  CHECK(s.augmented.n == 78);
  CHECK(s.augmented.coefficient("extra").p_value < 0.01);
  CHECK(s.adj_r2_incremental_ratio ==
        doctest::Approx((s.augmented.adj_r_squared - s.restricted.adj_r_squared) / s.restricted.adj_r_squared));

  // the restricted fit equals ols_fit on the same rows
  Eigen::MatrixXd X(78, 2);
  Eigen::VectorXd y(78);
  for (std::size_t i = 0; i < s.periods.size(); ++i) {
    const auto t = static_cast<std::size_t>(s.periods[i].ordinal - Period::parse("1996-Q1")->ordinal);
    X(static_cast<Eigen::Index>(i), 0) = 1;
    X(static_cast<Eigen::Index>(i), 1) = f[t];
    y(static_cast<Eigen::Index>(i)) = a[t];
  }
  const auto direct = rss::ols_fit(y, X, {"Constant", "forecast"});
  CHECK(direct.coefficients[1].estimate == s.restricted.coefficients[1].estimate);
  CHECK(direct.r_squared == s.restricted.r_squared);

  const auto windowed = rss::augmentation_study(actual, forecast, extra, 1, *Period::parse("2000-Q1"), *Period::parse("2009-Q4"));
  CHECK(windowed.periods.size() == 40);
}

TEST_CASE("the restricted residual as extra gives an exact fit") {
  std::mt19937_64 rng(12);
  std::normal_distribution<double> z;
  std::vector<double> f, a;
  for (int t = 0; t < 40; ++t) {
    f.push_back(z(rng));
    a.push_back(1 + 0.5 * f.back() + z(rng));
  }
  Eigen::MatrixXd X(40, 2);
  X.col(0).setOnes();
  X.col(1) = Eigen::Map<const Eigen::VectorXd>(f.data(), 40);
  const auto base = rss::ols_fit(Eigen::Map<const Eigen::VectorXd>(a.data(), 40), X, {"Constant", "forecast"});
  std::vector<double> resid(base.residuals.data(), base.residuals.data() + 40);
  const auto s = rss::augmentation_study(quarterly(a), quarterly(f), quarterly(resid), 0);
  CHECK(s.augmented.r_squared == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("a noise regressor is insignificant about 95% of the time") {
  std::mt19937_64 rng(13);
  std::normal_distribution<double> z;
  int insignificant = 0;
  double gain = 0;
  const int reps = 400;
  for (int r = 0; r < reps; ++r) {
    std::vector<double> f, a, e;
    for (int t = 0; t < 74; ++t) {
      f.push_back(z(rng));
      a.push_back(0.2 + f.back() + z(rng));
      e.push_back(z(rng));
    }
    const auto s = rss::augmentation_study(quarterly(a), quarterly(f), quarterly(e), 1);
    insignificant += s.augmented.coefficient("extra").p_value >= 0.05;
    gain += s.augmented.adj_r_squared - s.restricted.adj_r_squared;
  }
  const double rate = static_cast<double>(insignificant) / reps;
  CHECK(rate > 0.92);
  CHECK(rate < 0.98);
  CHECK(std::abs(gain / reps) < 0.005);
}

TEST_CASE("text table layout") {
  rss::OlsResult r;
  r.coefficients = {{"Constant", 0.1234, 0.05, 2.468, 0.016}, {"SPF", 1.123, 0.292, 3.846, 0.0003}};
  r.n = 74;
  r.r_squared = 0.17;
  r.adj_r_squared = 0.1585;
  r.residual_se = 2.0;
  r.df_resid = 72;
  r.f_stat = 14.79;
  r.f_df1 = 1;
  r.f_df2 = 72;
  r.f_p_value = 0.0003;
  std::ostringstream out;
  rss::write_ols_text(out, r, "DLGDP");
  const std::string rule(48, '-');
  CHECK(out.str() == "Dependent variable: DLGDP\n" + rule +
                         "\n"
                         "SPF                   1.123*** (0.292)\n"
                         "Constant              0.123** (0.050)\n" +
                         rule +
                         "\n"
                         "Observations          74\n"
                         "R2                    0.170\n"
                         "Adjusted R2           0.159\n"
                         "Residual Std. Error   2.000 (df = 72)\n"
                         "F Statistic           14.790*** (df = 1; 72)\n" +
                         rule + "\nNote: *p<0.1; **p<0.05; ***p<0.01\n");
  CHECK(rss::stars(0.2) == "");
  CHECK(rss::stars(0.07) == "*");
  CHECK(rss::fixed(-0.0004) == "0.000");

  const auto j = rss::to_json(r);
  CHECK(j["n"] == 74);
  CHECK(j["coefficients"][1]["name"] == "SPF");
}
