#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

namespace rss::sim {

// splitmix64 of (master, stream): independent, reproducible per-replication seeds.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double normal() { return normal_(engine_); }
  double uniform() { return uniform_(engine_); }
  std::uint64_t next() { return engine_(); }
  // Uniform integer in [0, n).
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(uniform() * static_cast<double>(n)) % n; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
  std::uniform_real_distribution<double> uniform_{0.0, 1.0};
};

std::vector<double> white_noise(std::size_t n, Rng& rng, double sd = 1.0);
std::vector<double> random_walk(std::size_t n, Rng& rng, double sd = 1.0);
// Stationary AR(1) with zero mean; `burn` draws discarded.
std::vector<double> ar1(std::size_t n, double phi, Rng& rng, std::size_t burn = 200);

struct VarProcess {
  Eigen::VectorXd intercept;         // K
  std::vector<Eigen::MatrixXd> lags;  // A_1..A_p, each K x K
  Eigen::MatrixXd noise_chol;        // lower-triangular factor of the innovation covariance
  double error_ar = 0.0;             // innovations follow u_t = error_ar u_{t-1} + e_t when non-zero
};

// T rows after `burn` discarded rows. `shift_at`/`shift` add a one-time intercept change from
// row `shift_at` of the returned sample onwards (shift_at < 0: none).
Eigen::MatrixXd simulate_var(const VarProcess& proc, Eigen::Index T, Rng& rng, Eigen::Index burn = 200,
                             Eigen::Index shift_at = -1, const Eigen::VectorXd& shift = {});

}  // namespace rss::sim
