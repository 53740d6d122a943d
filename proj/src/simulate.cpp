#include "rss/simulate.hpp"

namespace rss::sim {

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream) {
  std::uint64_t z = master + 0x9E3779B97F4A7C15ull * (stream + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::vector<double> white_noise(std::size_t n, Rng& rng, double sd) {
  std::vector<double> x(n);
  for (auto& v : x) v = sd * rng.normal();
  return x;
}

std::vector<double> random_walk(std::size_t n, Rng& rng, double sd) {
  std::vector<double> x(n);
  double acc = 0;
  for (auto& v : x) {
    acc += sd * rng.normal();
    v = acc;
  }
  return x;
}

std::vector<double> ar1(std::size_t n, double phi, Rng& rng, std::size_t burn) {
  std::vector<double> x(n);
  double prev = 0;
  for (std::size_t t = 0; t < n + burn; ++t) {
    prev = phi * prev + rng.normal();
    if (t >= burn) x[t - burn] = prev;
  }
  return x;
}

Eigen::MatrixXd simulate_var(const VarProcess& proc, Eigen::Index T, Rng& rng, Eigen::Index burn, Eigen::Index shift_at,
                             const Eigen::VectorXd& shift) {
  const Eigen::Index K = proc.intercept.size();
  const auto p = static_cast<Eigen::Index>(proc.lags.size());
  const Eigen::Index total = T + burn + p;
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(total, K);
  Eigen::VectorXd u_prev = Eigen::VectorXd::Zero(K);
  Eigen::VectorXd e(K);
  for (Eigen::Index t = p; t < total; ++t) {
    for (Eigen::Index k = 0; k < K; ++k) e(k) = rng.normal();
    Eigen::VectorXd u = proc.noise_chol * e;
    if (proc.error_ar != 0.0) u += proc.error_ar * u_prev;
    u_prev = u;
    Eigen::VectorXd v = proc.intercept + u;
    for (Eigen::Index l = 1; l <= p; ++l) v += proc.lags[static_cast<std::size_t>(l - 1)] * y.row(t - l).transpose();
    const Eigen::Index sample_row = t - p - burn;
    if (shift_at >= 0 && sample_row >= shift_at) v += shift;
    y.row(t) = v.transpose();
  }
  return y.bottomRows(T);
}

}  // namespace rss::sim
