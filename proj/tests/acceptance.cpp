// Acceptance run: one PASS / FAIL / SKIP line per criterion. Exit status is non-zero only when a
// criterion fails.

#include <sys/wait.h>

#include <algorithm>
#include <cstdarg>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "ols_oracle.hpp"
#include "reference_scanner.hpp"
#include "rss/granger.hpp"
#include "rss/index.hpp"
#include "rss/lexicon.hpp"
#include "rss/montecarlo.hpp"
#include "rss/regress.hpp"
#include "rss/scanner.hpp"
#include "rss/simulate.hpp"
#include "rss/synthetic.hpp"
#include "rss/timeseries.hpp"
#include "rss/var.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using testing::read_text;
using testing::write_text;
using Clock = std::chrono::steady_clock;

namespace {

constexpr std::uint64_t kMasterSeed = 20141001;

int failures = 0;

void report(int id, const char* status, const std::string& title, const std::string& detail) {
  std::printf("criterion %2d: %-4s %s | %s\n", id, status, title.c_str(), detail.c_str());
  std::fflush(stdout);
  if (std::string(status) == "FAIL") ++failures;
}

void verdict(int id, bool ok, const std::string& title, const std::string& detail) {
  report(id, ok ? "PASS" : "FAIL", title, detail);
}

std::string fmt(const char* f, ...) __attribute__((format(printf, 1, 2)));
std::string fmt(const char* f, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, f);
  std::vsnprintf(buf, sizeof buf, f, ap);
  va_end(ap);
  return buf;
}

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int rsstool(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string(RSSTOOL_PATH) + " " + args + " > '" + log.string() + "' 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string q(const fs::path& p) { return "'" + p.string() + "'"; }

std::set<std::string> read_words(const fs::path& p) {
  std::ifstream in(p);
  std::set<std::string> out;
  for (std::string line; std::getline(in, line);) {
    while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back()))) line.pop_back();
    if (!line.empty() && line[0] != '#') out.insert(line);
  }
  return out;
}

std::vector<std::string> read_lines(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::vector<std::string> out;
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::string check_rate(const std::vector<rss::mc::Check>& checks, const std::string& name, bool& ok) {
  for (const auto& c : checks)
    if (c.name == name) {
      ok = ok && c.pass();
      return fmt("%s %.3f in [%.2f, %.2f]%s", name.c_str(), c.value, c.lo, c.hi, c.pass() ? "" : " (out of band)");
    }
  ok = false;
  return name + " missing";
}

// ---------------------------------------------------------------- criteria

void scanner_correctness(const fs::path& dir) {
  const auto corpus = dir / "c1.jsonl";
  if (rsstool("synth corpus --articles 10000 --seed 101 --out " + q(corpus) + " --lexicon-dir " + q(dir), dir / "log") != 0) {
    verdict(1, false, "scanner output equals the naive reference", "corpus generation failed");
    return;
  }
  const auto lines = read_lines(corpus);
  const auto ex = read_words(dir / "excitement.txt"), an = read_words(dir / "anxiety.txt");
  const std::string lex = " --excitement " + q(dir / "excitement.txt") + " --anxiety " + q(dir / "anxiety.txt");
  struct Variant {
    const char* label;
    std::string args;
    ref::Options opt;
  };
  std::vector<Variant> variants;
  for (std::size_t neg : {0, 3}) {
    ref::Options o;
    o.negation = neg;
    const std::string n = " --negation " + std::to_string(neg);
    variants.push_back({"article", "index build" + n, o});
    o.concept_word = "liquidity";
    o.mode = "sentence";
    variants.push_back({"sentence", "index focus --concept liquidity --mode sentence" + n, o});
    o.mode = "window";
    o.radius = 100;
    variants.push_back({"window", "index focus --concept liquidity --mode window --window 100" + n, o});
  }
  bool ok = true;
  double slowest = 0;
  std::string detail;
  for (const auto& v : variants) {
    const auto out = dir / "c1.csv";
    const auto t0 = Clock::now();
    const int code = rsstool(v.args + " --corpus " + q(corpus) + lex + " --out " + q(out), dir / "log");
    slowest = std::max(slowest, seconds_since(t0));
    const bool same = code == 0 && read_text(out) == ref::index_csv(lines, ex, an, ref::us_filter(), v.opt);
    ok = ok && same;
    detail += fmt("%s/neg%zu %s; ", v.label, v.opt.negation, same ? "identical" : "DIFFERS");
  }
  ok = ok && slowest < 10.0;
  detail += fmt("slowest run %.2f s (limit 10 s), %u hardware threads", slowest, std::thread::hardware_concurrency());
  verdict(1, ok, "parallel index build byte-identical to the naive reference, 3 modes x negation", detail);
}

void scanner_throughput(const fs::path& dir) {
  rss::SyntheticCorpusOptions opt;
  opt.articles = 50000;
  opt.seed = 202;
  opt.mean_bytes = 2048;
  const auto lex = rss::demo_lexicon();
  const auto corpus = dir / "c2.jsonl";
  {
    std::ofstream out(corpus, std::ios::binary);
    rss::write_synthetic_corpus(out, opt, lex);
  }
  const double mean_bytes = static_cast<double>(fs::file_size(corpus)) / static_cast<double>(opt.articles);
  const int threads = std::max(1u, std::thread::hardware_concurrency()) >= 4 ? 4 : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  // No filter: every record is parsed, tokenized and scanned.
  const auto best_of_3 = [&](const char* preset, std::uint64_t& kept) {
    double best = 0;
    for (int run = 0; run < 3; ++run) {
      const auto t0 = Clock::now();
      const auto scan = rss::scan_corpus_file(corpus, rss::FilterSpec::preset(preset), lex, rss::ScanConfig{}, threads);
      best = std::max(best, static_cast<double>(scan.stats.records) / seconds_since(t0));
      kept = scan.stats.kept;
    }
    return best;
  };
  std::uint64_t kept_all = 0, kept_us = 0;
  const double best = best_of_3("none", kept_all);
  const double with_filter = best_of_3("us", kept_us);
  verdict(2, best >= 50000.0, "scanner throughput >= 50000 articles/s, whole-article mode",
          fmt("best of 3: %.0f articles/s, no filter, %llu of %zu articles scanned, %.0f bytes mean (file read, parse, "
              "tokenize, count), %d threads on %u hardware threads; context: %.0f articles/s with the us filter "
              "(%llu kept)",
              best, static_cast<unsigned long long>(kept_all), opt.articles, mean_bytes, threads,
              std::thread::hardware_concurrency(), with_filter, static_cast<unsigned long long>(kept_us)));
}

void rss_formula() {
  const auto m = [](int y, int mo) { return rss::Period::from_date(rss::make_date(y, mo, 1), rss::Frequency::monthly); };
  rss::PeriodCounts c{{m(2001, 1), {6, 2, 4}}, {m(2001, 2), {5, 5, 10}}};
  const auto s = rss::compute_rss(c);
  bool ok = *s.points[0].value == 1.0 && *s.points[1].value == 0.0;
  std::mt19937_64 rng(kMasterSeed);
  std::normal_distribution<double> z(5.0, 3.0);
  double worst_mean = 0, worst_sd = 0;
  for (int trial = 0; trial < 100; ++trial) {
    rss::Series x;
    const int n = 2 + static_cast<int>(rng() % 400);
    for (int i = 0; i < n; ++i) x.points.push_back({m(1990, 1) + i, z(rng)});
    const auto obs = rss::normalize(x).observed();
    double mean = 0;
    for (double v : obs) mean += v;
    mean /= static_cast<double>(obs.size());
    double ss = 0;
    for (double v : obs) ss += (v - mean) * (v - mean);
    worst_mean = std::max(worst_mean, std::abs(mean));
    worst_sd = std::max(worst_sd, std::abs(std::sqrt(ss / static_cast<double>(obs.size() - 1)) - 1.0));
  }
  ok = ok && worst_mean < 1e-12 && worst_sd < 1e-12;
  verdict(3, ok, "RSS fixtures exact; normalized mean 0 and sd 1",
          fmt("6/2 over 4 -> %g, 5/5 over 10 -> %g; worst |mean| %.1e, worst |sd-1| %.1e over 100 series",
              *s.points[0].value, *s.points[1].value, worst_mean, worst_sd));
}

void ols_oracle() {
  std::mt19937_64 rng(kMasterSeed);
  std::normal_distribution<double> z;
  double worst = 0, worst_identity = 0;
  const auto rel = [](double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); };
  for (int fixture = 0; fixture < 20; ++fixture) {
    const int n = 20 + static_cast<int>(rng() % 300), k = 2 + static_cast<int>(rng() % 6);
    Eigen::MatrixXd X(n, k);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
      X(i, 0) = 1;
      for (int j = 1; j < k; ++j) X(i, j) = 10.0 * j + z(rng) * j;
      y(i) = z(rng) * 3;
      for (int j = 1; j < k; ++j) y(i) += 0.3 * j * X(i, j);
    }
    std::vector<std::string> names(static_cast<std::size_t>(k), "b");
    names[0] = "Constant";
    const auto r = rss::ols_fit(y, X, names);
    const auto o = oracle::normal_equations(y, X);
    for (int j = 0; j < k; ++j) {
      worst = std::max(worst, rel(r.coefficients[static_cast<std::size_t>(j)].estimate, o.beta[static_cast<std::size_t>(j)]));
      worst = std::max(worst, rel(r.coefficients[static_cast<std::size_t>(j)].std_error, o.se[static_cast<std::size_t>(j)]));
    }
    worst = std::max({worst, rel(r.r_squared, o.r2), rel(r.adj_r_squared, o.adj_r2), rel(r.f_stat, o.f)});
    worst_identity = std::max({worst_identity,
                               rel(r.adj_r_squared, 1 - (1 - r.r_squared) * (n - 1) / static_cast<double>(n - k)),
                               rel(r.f_stat, (r.r_squared / (k - 1)) / ((1 - r.r_squared) / (n - k)))});
  }
  verdict(4, worst <= 1e-8 && worst_identity <= 1e-8, "OLS equals a normal-equations oracle; R2/adjR2/F identities",
          fmt("20 fixtures: worst relative difference %.1e (limit 1e-8), worst identity gap %.1e", worst, worst_identity));
}

void public_replication() {
  const char* env = std::getenv("RSS_REPLICATION_DIR");
  const fs::path dir = env ? fs::path(env) : fs::path(RSS_DATA_DIR) / "replication";
  if (!fs::exists(dir / "gdp.csv") || !fs::exists(dir / "spf.csv")) {
    report(5, "SKIP", "public-data forecast regression",
           "requires external data: put gdp.csv (third-vintage real GDP levels, quarterly) and spf.csv "
           "(one-quarter-ahead consensus growth forecast, labelled by target quarter) in data/replication or in "
           "$RSS_REPLICATION_DIR");
    return;
  }
  try {
    const auto growth = rss::log_growth(rss::read_series_csv(dir / "gdp.csv"), 400.0);
    const auto spf = rss::read_series_csv(dir / "spf.csv");
    const auto from = rss::Period::parse("1996-Q2"), to = rss::Period::parse("2014-Q3");
    const auto j = rss::align({growth.slice(from, to), spf.slice(from, to)});
    const auto n = j.values.rows();
    Eigen::MatrixXd X(n, 2);
    X.col(0).setOnes();
    X.col(1) = j.values.col(1);
    const auto r = rss::ols_fit(j.values.col(0), X, {"Constant", "SPF"});
    const double slope = r.coefficients[1].estimate;
    const bool ok = n >= 73 && n <= 74 && std::abs(slope - 1.066) <= 0.20 && std::abs(r.r_squared - 0.186) <= 0.05;
    verdict(5, ok, "public-data forecast regression",
            fmt("n = %ld (73-74), slope %.3f (1.066 +/- 0.20), R2 %.3f (0.186 +/- 0.05)", static_cast<long>(n), slope,
                r.r_squared));
  } catch (const std::exception& e) {
    verdict(5, false, "public-data forecast regression", std::string("error: ") + e.what());
  }
}

void monte_carlo(const fs::path& dir) {
  rss::mc::Config cfg;
  cfg.master_seed = kMasterSeed;

  {
    const auto t0 = Clock::now();
    const auto checks = rss::mc::unit_root_size_power(cfg);
    const double secs = seconds_since(t0);
    bool ok = secs < 120;
    std::string d;
    for (const char* n : {"adf_size", "kpss_size", "adf_power", "kpss_power"}) d += check_rate(checks, n, ok) + "; ";
    verdict(6, ok, "ADF/KPSS size in [3%, 7%] and power >= 95%, 1000 reps, n = 500", d + fmt("%.1f s (limit 120 s)", secs));
  }
  {
    const auto checks = rss::mc::integration_order_recovery(cfg);
    bool ok = true;
    std::string d = check_rate(checks, "integration_rw", ok) + "; " + check_rate(checks, "integration_wn", ok);
    verdict(7, ok, "integration order: random walk -> 1, white noise -> 0 in >= 95% of 200 reps", d);
  }
  {
    const auto checks = rss::mc::var_recovery(cfg);
    bool ok = true;
    std::string d = check_rate(checks, "var2_recovery", ok) + " (max abs error); " +
                    check_rate(checks, "aic_selects_true_lag", ok);
    verdict(8, ok, "VAR(2) coefficients within 0.05 at T = 10000; AIC picks lag 3 in >= 60%", d);
  }
  {
    rss::sim::Rng rng(kMasterSeed);
    rss::sim::VarProcess proc;
    proc.intercept = Eigen::Vector2d(0.1, 0.1);
    Eigen::Matrix2d a;
    a << 0.5, 0.1, 0.2, 0.3;
    proc.lags = {a};
    proc.noise_chol = Eigen::Matrix2d::Identity();
    const auto y = rss::sim::simulate_var(proc, 300, rng);
    const int df44 = rss::portmanteau_test(rss::fit_var(y, 5), 16).df;
    const int df48 = rss::portmanteau_test(rss::fit_var(y, 4), 16).df;
    const int df20 = rss::breusch_godfrey_test(rss::fit_var(y, 5), 5).df;
    bool ok = df44 == 44 && df48 == 48 && df20 == 20;
    const auto checks = rss::mc::diagnostics_size_power(cfg);
    std::string d = fmt("Portmanteau df %d (p=5, h=16), %d (p=4, h=16), BG df %d (h=5); ", df44, df48, df20);
    for (const char* n : {"portmanteau_size", "bg_size", "portmanteau_power", "bg_power"}) d += check_rate(checks, n, ok) + "; ";
    verdict(9, ok, "diagnostic df reproduced; size in [3%, 7%]; under-lag power >= 80%", d);
  }
  {
    const auto checks = rss::mc::cusum_size_power(cfg);
    bool ok = true;
    std::string d = check_rate(checks, "cusum_false_alarm", ok) + "; " + check_rate(checks, "cusum_break_detection", ok);
    for (const auto& c : checks)
      if (!c.gate) d += fmt("; context: %s %.3f", c.name.c_str(), c.value);
    verdict(10, ok, "OLS-CUSUM false alarm <= 7%; 5 sigma break detected >= 90%, 1000 reps", d);
  }
  {
    const auto checks = rss::mc::toda_yamamoto_size_power(cfg);
    bool ok = true;
    std::string d = check_rate(checks, "ty_spurious_rate", ok) + "; " + check_rate(checks, "ty_spurious_either", ok) +
                    "; " + check_rate(checks, "ty_power", ok) + "; " + check_rate(checks, "ty_vs_naive_gap", ok);

    // m = 0 path against a plain VAR(p) Wald test, and rescaling invariance
    rss::sim::Rng rng(kMasterSeed + 11);
    rss::sim::VarProcess proc;
    proc.intercept = Eigen::Vector2d(0.2, -0.1);
    Eigen::Matrix2d a;
    a << 0.4, 0.0, 0.3, 0.3;
    proc.lags = {a};
    proc.noise_chol = Eigen::Matrix2d::Identity();
    int m0_cases = 0, m0_equal = 0;
    double worst_scale = 0;
    for (int r = 0; r < 20; ++r) {
      const auto y = rss::sim::simulate_var(proc, 300, rng);
      try {
        const auto rep = rss::toda_yamamoto(y, {"x", "y"});
        if (rep.m == 0) {
          ++m0_cases;
          const auto plain = rss::fit_var(y, rep.p);
          m0_equal += rep.wald[0].chi_sq == rss::wald_test(plain, 0, 1, rep.p).chi_sq &&
                      rep.wald[1].chi_sq == rss::wald_test(plain, 1, 0, rep.p).chi_sq;
        }
        Eigen::MatrixXd scaled = y;
        scaled.col(0) *= 1e3;
        scaled.col(1) = (scaled.col(1).array() * 1e-2 - 7.0).matrix();
        const auto rs = rss::toda_yamamoto(scaled, {"x", "y"});
        for (int k = 0; k < 2; ++k) {
          const double w = rep.wald[static_cast<std::size_t>(k)].chi_sq, ws = rs.wald[static_cast<std::size_t>(k)].chi_sq;
          worst_scale = std::max(worst_scale, std::abs(w - ws) / std::max(1.0, std::abs(w)));
        }
      } catch (const rss::Error&) {
      }
    }
    ok = ok && m0_cases > 0 && m0_equal == m0_cases && worst_scale <= 1e-8;
    d += fmt("; m = 0 path equals plain VAR(p) Wald in %d/%d stationary fixtures; worst rescaling difference %.1e", m0_equal,
             m0_cases, worst_scale);
    verdict(11, ok, "Toda-Yamamoto: spurious <= 10%, power >= 80%, m = 0 reduction, rescaling invariance", d);
  }
  (void)dir;
}

void determinism(const fs::path& dir) {
  // inputs
  const auto corpus = dir / "c12.jsonl";
  rsstool("synth corpus --articles 4000 --seed 303 --out " + q(corpus) + " --lexicon-dir " + q(dir), dir / "log");
  rss::sim::Rng rng(kMasterSeed);
  const auto rw1 = rss::sim::random_walk(200, rng);
  const auto rw2 = rss::sim::random_walk(200, rng);
  const auto write_monthly = [](const fs::path& p, const std::vector<double>& v) {
    std::ostringstream s;
    s << "period,value\n";
    for (std::size_t i = 0; i < v.size(); ++i) s << 1990 + i / 12 << '-' << (i % 12 < 9 ? "0" : "") << i % 12 + 1 << ',' << fmt("%.17g", v[i]) << '\n';
    write_text(p, s.str());
  };
  const auto write_quarterly = [](const fs::path& p, const std::vector<double>& v) {
    std::ostringstream s;
    s << "period,value\n";
    for (std::size_t i = 0; i < v.size(); ++i) s << 1990 + i / 4 << "-Q" << i % 4 + 1 << ',' << fmt("%.17g", v[i]) << '\n';
    write_text(p, s.str());
  };
  write_monthly(dir / "x.csv", rw1);
  write_monthly(dir / "y.csv", rw2);
  std::vector<double> level{100}, fc{0}, extra;
  for (int t = 0; t < 90; ++t) extra.push_back(rng.normal());
  for (int t = 1; t < 90; ++t) {
    fc.push_back(2 + rng.normal());
    level.push_back(level.back() * std::exp((fc.back() + 2 * rng.normal()) / 400));
  }
  write_quarterly(dir / "gdp.csv", level);
  write_quarterly(dir / "spf.csv", fc);
  write_quarterly(dir / "extra.csv", extra);

  const std::string lex = " --excitement " + q(dir / "excitement.txt") + " --anxiety " + q(dir / "anxiety.txt");
  struct Command {
    std::string name;
    std::function<std::string(const fs::path&)> args;  // output location -> arguments
    std::vector<std::string> files;                     // analysis outputs relative to the location
  };
  const std::vector<Command> commands{
      {"index build", [&](const fs::path& o) { return "index build --corpus " + q(corpus) + lex + " --out " + q(o / "i.csv") + " --series-out " + q(o / "s.csv"); },
       {"i.csv", "s.csv"}},
      {"index focus", [&](const fs::path& o) { return "index focus --concept liquidity --negation 2 --corpus " + q(corpus) + lex + " --out " + q(o / "f.csv"); },
       {"f.csv"}},
      {"stats adf", [&](const fs::path& o) { return "stats adf --series " + q(dir / "x.csv") + " --lags 6 --out " + q(o / "adf.json"); }, {"adf.json"}},
      {"stats kpss", [&](const fs::path& o) { return "stats kpss --series " + q(dir / "x.csv") + " --lag 3 --out " + q(o / "kpss.json"); }, {"kpss.json"}},
      {"stats granger", [&](const fs::path& o) { return "stats granger --x " + q(dir / "x.csv") + " --y " + q(dir / "y.csv") + " --p-max 12 --out-dir " + q(o / "g"); },
       {"g/report.txt", "g/report.json", "g/aic.csv", "g/cusum_x.csv", "g/cusum_y.csv"}},
      {"stats regress", [&](const fs::path& o) { return "stats regress --actual " + q(dir / "gdp.csv") + " --forecast " + q(dir / "spf.csv") + " --extra " + q(dir / "extra.csv") + " --out-dir " + q(o / "r"); },
       {"r/regress.txt", "r/regress.json"}},
      {"selftest montecarlo", [&](const fs::path& o) { return "selftest montecarlo --out " + q(o / "mc.json"); }, {"mc.json"}},
  };
  bool ok = true;
  std::string detail;
  for (const auto& c : commands) {
    const auto a = dir / "run_a", b = dir / "run_b";
    fs::create_directories(a);
    fs::create_directories(b);
    const int ca = rsstool(c.args(a), dir / "log");
    const int cb = rsstool(c.args(b), dir / "log");
    bool same = ca == cb;
    for (const auto& f : c.files) same = same && fs::exists(a / f) && read_text(a / f) == read_text(b / f);
    ok = ok && same;
    detail += c.name + (same ? " identical; " : " DIFFERS; ");
  }
  // thread count must not change the index either
  const auto t1 = dir / "t1", t3 = dir / "t3";
  fs::create_directories(t1);
  fs::create_directories(t3);
  rsstool("index build --threads 1 --corpus " + q(corpus) + lex + " --out " + q(t1 / "i.csv"), dir / "log");
  rsstool("index build --threads 3 --corpus " + q(corpus) + lex + " --out " + q(t3 / "i.csv"), dir / "log");
  const bool threads_same = read_text(t1 / "i.csv") == read_text(t3 / "i.csv") && !read_text(t1 / "i.csv").empty();
  ok = ok && threads_same;
  detail += std::string("index with 1 vs 3 threads ") + (threads_same ? "identical" : "DIFFERS");
  verdict(12, ok, "reruns produce byte-identical analysis outputs", detail);
}

}  // namespace

int main() {
  testing::TempDir dir;
  const auto t0 = Clock::now();
  scanner_correctness(dir.path());
  scanner_throughput(dir.path());
  rss_formula();
  ols_oracle();
  public_replication();
  monte_carlo(dir.path());
  determinism(dir.path());
  std::printf("acceptance: %d failed, %.1f s\n", failures, seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
