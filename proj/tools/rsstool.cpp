// rsstool: builds relative sentiment shift indices from a news corpus and runs the
// statistical validation pipeline on the resulting series.

#include <omp.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "rss/corpus.hpp"
#include "rss/date.hpp"
#include "rss/error.hpp"
#include "rss/granger.hpp"
#include "rss/index.hpp"
#include "rss/lexicon.hpp"
#include "rss/montecarlo.hpp"
#include "rss/regress.hpp"
#include "rss/report.hpp"
#include "rss/scanner.hpp"
#include "rss/stationarity.hpp"
#include "rss/synthetic.hpp"
#include "rss/timeseries.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitDegenerate = 4;
constexpr int kExitOther = 1;

int default_threads() {
  if (const char* env = std::getenv("RSS_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  const auto hw = std::thread::hardware_concurrency();
  return hw > 0 ? static_cast<int>(hw) : 1;
}

// Inclusive date bound from `YYYY-MM-DD`, `YYYY-MM` or `YYYY-Qn`. End bounds cover the whole period.
rss::Date date_bound(const std::string& text, bool end) {
  const auto p = rss::Period::parse(text);
  if (!p) throw rss::InputError("bad date bound '" + text + "'");
  if (!end) return p->first_day();
  return (*p + 1).first_day() - std::chrono::days{1};
}

std::optional<rss::Period> period_bound(const std::string& text) {
  if (text.empty()) return std::nullopt;
  const auto p = rss::Period::parse(text);
  if (!p) throw rss::InputError("bad period bound '" + text + "'");
  return p;
}

void write_file(const fs::path& path, const std::string& content) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw rss::InputError("cannot write " + path.string());
  out << content;
}

void emit_json(const std::string& out_path, const rss::Json& j) {
  const auto text = j.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_file(out_path, text);
}

// ---------------------------------------------------------------- index

struct IndexArgs {
  std::string corpus, excitement, anxiety;
  std::string preset = "us";
  std::optional<std::string> attribution, language;
  std::vector<std::string> allow, deny, exclude_tags;
  std::string from, to;
  std::string freq = "monthly";
  std::size_t negation = 0;
  std::vector<std::string> negation_cues{"not"};
  int threads = 0;
  std::string out, series_out, summary;
  // focus only
  std::string concept_word, mode = "window", window = "100";
};

void add_index_options(CLI::App* cmd, IndexArgs& a, bool focus) {
  cmd->add_option("--corpus", a.corpus, "JSON-lines corpus (.gz accepted)")->required()->check(CLI::ExistingFile);
  cmd->add_option("--excitement", a.excitement, "excitement word list")->required()->check(CLI::ExistingFile);
  cmd->add_option("--anxiety", a.anxiety, "anxiety word list")->required()->check(CLI::ExistingFile);
  cmd->add_option("--preset", a.preset, "filter preset: us, uk or none")->capture_default_str();
  cmd->add_option("--attribution", a.attribution, "required attribution (overrides preset)");
  cmd->add_option("--language", a.language, "required language code (overrides preset)");
  cmd->add_option("--allow", a.allow, "allowed dateline prefixes (overrides preset)");
  cmd->add_option("--deny", a.deny, "denied dateline prefixes (overrides preset)");
  cmd->add_option("--exclude-tags", a.exclude_tags, "excluded tag codes (overrides preset)");
  cmd->add_option("--from", a.from, "first date (YYYY-MM-DD, YYYY-MM or YYYY-Qn)");
  cmd->add_option("--to", a.to, "last date, inclusive");
  cmd->add_option("--freq", a.freq, "output frequency: daily, monthly or quarterly")->capture_default_str();
  cmd->add_option("--negation", a.negation, "drop hits preceded by a cue within K tokens (0: off)")->capture_default_str();
  cmd->add_option("--negation-cues", a.negation_cues, "negation cue words")->capture_default_str();
  cmd->add_option("--threads", a.threads, "scanner threads (default: $RSS_THREADS or all cores)");
  cmd->add_option("--out", a.out, "index CSV")->required();
  cmd->add_option("--series-out", a.series_out, "normalized series CSV (period,value)");
  cmd->add_option("--summary", a.summary, "run summary JSON (default: <out>.summary.json)");
  if (focus) {
    cmd->add_option("--concept", a.concept_word, "concept word, e.g. liquidity")->required();
    cmd->add_option("--mode", a.mode, "proximity metric: window, sentence or article")
        ->check(CLI::IsMember({"window", "sentence", "article"}))
        ->capture_default_str();
    cmd->add_option("--window", a.window, "character (byte) radius for --mode window, or inf")->capture_default_str();
  }
}

rss::Json effective_config(const rss::FilterSpec& f, const rss::ScanConfig& cfg, const std::string& freq,
                           const rss::Lexicon& lex) {
  const auto opt_date = [](const std::optional<rss::Date>& d) -> rss::Json {
    return d ? rss::Json(rss::format_date(*d)) : rss::Json(nullptr);
  };
  rss::Json j;
  j["filter"] = {{"attribution", f.required_attribution},
                 {"language", f.required_language},
                 {"dateline_allow", f.dateline_allow},
                 {"dateline_deny", f.dateline_deny},
                 {"excluded_tags", f.excluded_tags},
                 {"from", opt_date(f.from)},
                 {"to", opt_date(f.to)}};
  const char* mode = cfg.mode == rss::ScanMode::whole_article   ? "article"
                     : cfg.mode == rss::ScanMode::same_sentence ? "sentence"
                                                                : "window";
  j["scan"] = {{"mode", mode},
               {"concept", cfg.concept_word},
               {"window", cfg.mode == rss::ScanMode::char_window && cfg.radius != rss::ScanConfig::kUnboundedRadius
                              ? rss::Json(cfg.radius)
                              : rss::Json(nullptr)},
               {"negation_window", cfg.negation_window},
               {"negation_cues", cfg.negation_cues}};
  j["frequency"] = freq;
  j["lexicon_size"] = {{"excitement", lex.excitement().size()}, {"anxiety", lex.anxiety().size()}};
  return j;
}

int run_index(const IndexArgs& a, bool focus) {
  const auto t0 = std::chrono::steady_clock::now();
  auto filter = rss::FilterSpec::preset(a.preset);
  if (a.attribution) filter.required_attribution = *a.attribution;
  if (a.language) filter.required_language = *a.language;
  if (!a.allow.empty()) filter.dateline_allow = a.allow;
  if (!a.deny.empty()) filter.dateline_deny = a.deny;
  if (!a.exclude_tags.empty()) filter.excluded_tags = a.exclude_tags;
  if (!a.from.empty()) filter.from = date_bound(a.from, false);
  if (!a.to.empty()) filter.to = date_bound(a.to, true);
  filter.validate();

  rss::ScanConfig cfg;
  cfg.negation_window = a.negation;
  cfg.negation_cues = a.negation_cues;
  if (focus) {
    cfg.concept_word = a.concept_word;
    if (a.mode == "sentence") {
      cfg.mode = rss::ScanMode::same_sentence;
    } else {
      cfg.mode = rss::ScanMode::char_window;
      if (a.mode == "article" || a.window == "inf") {
        cfg.radius = rss::ScanConfig::kUnboundedRadius;
      } else {
        try {
          const long long r = std::stoll(a.window);
          if (r <= 0) throw rss::InputError("--window must be positive");
          cfg.radius = static_cast<std::size_t>(r);
        } catch (const std::logic_error&) {
          throw rss::InputError("bad --window '" + a.window + "'");
        }
      }
    }
  }
  cfg.validate();
  const auto freq = rss::parse_frequency(a.freq);
  const auto lex = rss::load_lexicon(a.excitement, a.anxiety);
  const int threads = a.threads > 0 ? a.threads : default_threads();

  const auto scan = rss::scan_corpus_file(a.corpus, filter, lex, cfg, threads);
  if (scan.daily.empty())
    throw rss::DegenerateDataError("no articles passed the filters (" + std::to_string(scan.stats.records) +
                                   " records, " + std::to_string(scan.stats.parse_errors) + " parse errors)");

  const auto counts = rss::aggregate(scan.daily, freq);
  const auto rows = rss::build_index(counts);
  std::ostringstream csv;
  rss::write_index_csv(csv, rows);
  write_file(a.out, csv.str());
  if (!a.series_out.empty()) {
    rss::Series s{freq, {}, {}};
    for (const auto& r : rows) s.points.push_back({r.period, r.rss_norm});
    std::ostringstream sc;
    rss::write_series_csv(sc, s);
    write_file(a.series_out, sc.str());
  }

  const double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  rss::Json summary;
  summary["command"] = focus ? "index focus" : "index build";
  summary["corpus"] = a.corpus;
  summary["threads"] = threads;
  summary["scan"] = rss::to_json(scan.stats);
  summary["wall_seconds"] = wall;
  summary["periods"] = rows.size();
  summary["effective_config"] = effective_config(filter, cfg, a.freq, lex);
  const std::string summary_path = a.summary.empty() ? a.out + ".summary.json" : a.summary;
  write_file(summary_path, summary.dump(2) + "\n");

  std::cerr << "kept " << scan.stats.kept << ", dropped " << scan.stats.dropped << ", parse errors "
            << scan.stats.parse_errors << " of " << scan.stats.records << " records; "
            << static_cast<long long>(scan.stats.articles_per_second()) << " articles/s\n";
  return 0;
}

// ---------------------------------------------------------------- stats

struct SeriesArgs {
  std::string path, from, to, resample;
  int diff = 0;
};

rss::Series load_series(const std::string& path, const std::string& resample, const std::string& from,
                        const std::string& to) {
  auto s = rss::read_series_csv(path);
  if (!resample.empty()) {
    const auto target = rss::parse_frequency(resample);
    if (s.freq != target) s = rss::resample_mean(s, target);
  }
  return s.slice(period_bound(from), period_bound(to));
}

struct UnitRootArgs {
  SeriesArgs series;
  std::optional<int> lags;
  std::string det = "c";
  std::string preset;
  std::string out;
};

void add_unit_root_options(CLI::App* cmd, UnitRootArgs& a, const char* lag_flag, const char* lag_help) {
  cmd->add_option("--series", a.series.path, "series CSV (period,value)")->required()->check(CLI::ExistingFile);
  cmd->add_option(lag_flag, a.lags, lag_help);
  cmd->add_option("--det", a.det, "deterministic terms: c or ct")->capture_default_str();
  cmd->add_option("--diff", a.series.diff, "difference the series this many times first")->capture_default_str();
  cmd->add_option("--resample", a.series.resample, "resample to this frequency by within-period mean");
  cmd->add_option("--from", a.series.from, "first period");
  cmd->add_option("--to", a.series.to, "last period");
  cmd->add_option("--preset", a.preset, "standard: ADF lag 6, KPSS truncation lag 3")->check(CLI::IsMember({"standard"}));
  cmd->add_option("--out", a.out, "result JSON (default: stdout)");
}

int run_unit_root(const UnitRootArgs& a, bool adf) {
  int lags = 0;
  if (a.lags) {
    lags = *a.lags;
  } else if (a.preset == "standard") {
    lags = adf ? 6 : 3;
  } else {
    throw rss::InputError(adf ? "--lags is required (or --preset standard)" : "--lag is required (or --preset standard)");
  }
  auto s = load_series(a.series.path, a.series.resample, a.series.from, a.series.to);
  if (a.series.diff > 0) s = rss::difference(s, a.series.diff);
  const auto det = rss::parse_deterministic(a.det);
  const auto r = adf ? rss::adf_test(s, lags, det) : rss::kpss_test(s, lags, det);
  auto j = rss::to_json(r);
  j["series"] = a.series.path;
  j["differences"] = a.series.diff;
  if (!s.points.empty()) {
    j["first_period"] = s.points.front().period.label();
    j["last_period"] = s.points.back().period.label();
  }
  emit_json(a.out, j);
  return 0;
}

struct GrangerArgs {
  std::string x, y, x_name = "x", y_name = "y";
  std::string freq, from, to;
  rss::TodaYamamotoOptions opt;
  std::string det = "c";
  std::string out_dir;
};

int run_granger(GrangerArgs a) {
  auto x = rss::read_series_csv(a.x);
  auto y = rss::read_series_csv(a.y);
  rss::Frequency target;
  if (!a.freq.empty())
    target = rss::parse_frequency(a.freq);
  else
    target = static_cast<int>(x.freq) > static_cast<int>(y.freq) ? x.freq : y.freq;
  if (x.freq != target) x = rss::resample_mean(x, target);
  if (y.freq != target) y = rss::resample_mean(y, target);
  x = x.slice(period_bound(a.from), period_bound(a.to));
  y = y.slice(period_bound(a.from), period_bound(a.to));
  a.opt.integration.det = rss::parse_deterministic(a.det);

  const fs::path dir = a.out_dir;
  fs::create_directories(dir);
  rss::GrangerReport rep;
  int code = 0;
  std::string failure;
  try {
    rep = rss::toda_yamamoto(x, y, {a.x_name, a.y_name}, a.opt);
  } catch (const rss::PipelineError& e) {
    rep = e.partial();
    failure = e.what();
    code = e.kind() == rss::ErrorKind::numerical ? kExitNumerical
           : e.kind() == rss::ErrorKind::input   ? kExitInput
                                                 : kExitDegenerate;
  }

  std::ostringstream text;
  rss::write_granger_text(text, rep);
  if (!failure.empty()) text << "ERROR: " << failure << "\n";
  write_file(dir / "report.txt", text.str());
  auto j = rss::to_json(rep);
  if (!failure.empty()) j["error"] = failure;
  write_file(dir / "report.json", j.dump(2) + "\n");
  if (!rep.lag_selection.aic.empty()) {
    std::ostringstream aic;
    rss::write_aic_csv(aic, rep.lag_selection);
    write_file(dir / "aic.csv", aic.str());
  }
  for (const auto& eq : rep.stability.equations) {
    std::ostringstream c;
    rss::write_cusum_csv(c, eq, rep.stability.boundary);
    write_file(dir / ("cusum_" + eq.equation + ".csv"), c.str());
  }
  std::cout << text.str();
  if (code != 0) std::cerr << "error: " << failure << "\n";
  return code;
}

struct RegressArgs {
  std::string actual, forecast, extra;
  std::string actual_name = "DLGDP", forecast_name = "SPF", extra_name = "RSS";
  std::string actual_transform = "dlog400";
  int lag_extra = 1;
  int lag_forecast = 0;
  std::string from, to, out_dir;
};

int run_regress(const RegressArgs& a) {
  auto actual = rss::read_series_csv(a.actual);
  auto forecast = rss::read_series_csv(a.forecast);
  auto extra = rss::read_series_csv(a.extra);
  if (a.actual_transform == "dlog400") actual = rss::log_growth(actual, 400.0);
  if (a.lag_forecast > 0) forecast = rss::lag(forecast, a.lag_forecast);
  // A finer-grained extra series (e.g. a monthly index) is averaged onto the target grid.
  if (static_cast<int>(extra.freq) < static_cast<int>(actual.freq)) extra = rss::resample_mean(extra, actual.freq);
  const auto study = rss::augmentation_study(actual, forecast, extra, a.lag_extra, period_bound(a.from),
                                             period_bound(a.to), a.actual_name, a.forecast_name, a.extra_name);
  std::ostringstream text;
  rss::write_augmentation_text(text, study);
  std::cout << text.str();
  if (!a.out_dir.empty()) {
    const fs::path dir = a.out_dir;
    fs::create_directories(dir);
    write_file(dir / "regress.txt", text.str());
    write_file(dir / "regress.json", rss::to_json(study).dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------- selftest / synth

int run_selftest(std::uint64_t seed, int threads, const std::string& out) {
  rss::mc::Config cfg;
  cfg.master_seed = seed;
  cfg.threads = threads;
  const auto checks = rss::mc::run_all(cfg);
  rss::Json j = rss::Json::array();
  bool ok = true;
  for (const auto& c : checks) {
    std::printf("%-4s %-26s %.4f in [%.3f, %.3f]  (%d reps, %d errors)  %s\n", !c.gate ? "INFO" : c.pass() ? "PASS" : "FAIL",
                c.name.c_str(), c.value, c.lo, c.hi, c.replications, c.failures, c.description.c_str());
    ok = ok && c.pass();
    j.push_back(rss::Json{{"name", c.name},
                          {"description", c.description},
                          {"value", c.value},
                          {"lo", c.lo},
                          {"hi", c.hi},
                          {"replications", c.replications},
                          {"errors", c.failures},
                          {"gated", c.gate},
                          {"pass", c.pass()}});
  }
  if (!out.empty()) write_file(out, rss::Json{{"master_seed", seed}, {"checks", j}}.dump(2) + "\n");
  return ok ? 0 : kExitOther;
}

int run_synth(const rss::SyntheticCorpusOptions& opt, const std::string& out, const std::string& lexicon_dir) {
  const auto lex = rss::demo_lexicon();
  std::ostringstream buf;
  rss::write_synthetic_corpus(buf, opt, lex);
  write_file(out, buf.str());
  if (!lexicon_dir.empty()) {
    fs::create_directories(lexicon_dir);
    lex.save(fs::path(lexicon_dir) / "excitement.txt", fs::path(lexicon_dir) / "anxiety.txt");
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rsstool: relative sentiment shift indices and time-series validation"};
  app.set_config("--config", "", "INI/TOML configuration file (flags take precedence)");
  app.require_subcommand(1);

  auto* index = app.add_subcommand("index", "build sentiment indices from a corpus");
  index->require_subcommand(1);
  IndexArgs build_args, focus_args;
  auto* build = index->add_subcommand("build", "general index over all kept articles");
  add_index_options(build, build_args, false);
  auto* focus = index->add_subcommand("focus", "concept-focused index");
  add_index_options(focus, focus_args, true);

  auto* stats = app.add_subcommand("stats", "statistical tests on series CSVs");
  stats->require_subcommand(1);
  UnitRootArgs adf_args, kpss_args;
  auto* adf = stats->add_subcommand("adf", "augmented Dickey-Fuller test");
  add_unit_root_options(adf, adf_args, "--lags", "lagged differences in the test regression");
  auto* kpss = stats->add_subcommand("kpss", "KPSS stationarity test");
  add_unit_root_options(kpss, kpss_args, "--lag", "Bartlett truncation lag");

  GrangerArgs g;
  auto* granger = stats->add_subcommand("granger", "Toda-Yamamoto Granger causality pipeline");
  granger->add_option("--x", g.x, "first series CSV")->required()->check(CLI::ExistingFile);
  granger->add_option("--y", g.y, "second series CSV")->required()->check(CLI::ExistingFile);
  granger->add_option("--x-name", g.x_name, "label for x")->capture_default_str();
  granger->add_option("--y-name", g.y_name, "label for y")->capture_default_str();
  granger->add_option("--freq", g.freq, "common frequency; finer inputs are averaged");
  granger->add_option("--from", g.from, "first period");
  granger->add_option("--to", g.to, "last period");
  granger->add_option("--p-max", g.opt.p_max, "largest VAR lag considered")->capture_default_str();
  granger->add_option("--alpha", g.opt.alpha, "significance level for internal gates")->capture_default_str();
  granger->add_option("--max-order", g.opt.integration.max_order, "largest integration order tried")->capture_default_str();
  granger->add_option("--adf-lags", g.opt.integration.adf_lags, "ADF lag order")->capture_default_str();
  granger->add_option("--kpss-lag", g.opt.integration.kpss_lag, "KPSS truncation lag")->capture_default_str();
  granger->add_option("--det", g.det, "unit-root deterministic terms: c or ct")->capture_default_str();
  granger->add_option("--pt-lags", g.opt.portmanteau_h, "Portmanteau lags h")->capture_default_str();
  granger->add_option("--bg-lags", g.opt.bg_h, "Breusch-Godfrey lags h")->capture_default_str();
  granger->add_option("--out-dir", g.out_dir, "directory for report.txt, report.json, aic.csv, cusum_*.csv")->required();

  RegressArgs r;
  auto* regress = stats->add_subcommand("regress", "forecast-augmentation regressions");
  regress->add_option("--actual", r.actual, "outcome series CSV (levels unless --actual-transform none)")
      ->required()
      ->check(CLI::ExistingFile);
  regress->add_option("--forecast", r.forecast, "forecast series CSV, labelled by target period")
      ->required()
      ->check(CLI::ExistingFile);
  regress->add_option("--extra", r.extra, "additional regressor CSV")->required()->check(CLI::ExistingFile);
  regress->add_option("--lag-extra", r.lag_extra, "periods to lag the extra regressor")->capture_default_str();
  regress->add_option("--lag-forecast", r.lag_forecast, "periods to lag the forecast series")->capture_default_str();
  regress->add_option("--actual-transform", r.actual_transform, "dlog400 (400 x log difference) or none")
      ->check(CLI::IsMember({"dlog400", "none"}))
      ->capture_default_str();
  regress->add_option("--actual-name", r.actual_name)->capture_default_str();
  regress->add_option("--forecast-name", r.forecast_name)->capture_default_str();
  regress->add_option("--extra-name", r.extra_name)->capture_default_str();
  regress->add_option("--from", r.from, "first period");
  regress->add_option("--to", r.to, "last period");
  regress->add_option("--out-dir", r.out_dir, "directory for regress.txt and regress.json");

  auto* selftest = app.add_subcommand("selftest", "built-in verification");
  selftest->require_subcommand(1);
  std::uint64_t seed = 20141001;
  int mc_threads = 0;
  std::string mc_out;
  auto* montecarlo = selftest->add_subcommand("montecarlo", "Monte Carlo size/power checks");
  montecarlo->add_option("--seed", seed, "master seed")->capture_default_str();
  montecarlo->add_option("--threads", mc_threads, "worker threads (default: all cores)");
  montecarlo->add_option("--out", mc_out, "results JSON");

  auto* synth = app.add_subcommand("synth", "synthetic inputs");
  synth->require_subcommand(1);
  rss::SyntheticCorpusOptions synth_opt;
  std::string synth_out, synth_lex;
  auto* synth_corpus = synth->add_subcommand("corpus", "write a synthetic JSON-lines corpus");
  synth_corpus->add_option("--articles", synth_opt.articles)->capture_default_str();
  synth_corpus->add_option("--seed", synth_opt.seed)->capture_default_str();
  synth_corpus->add_option("--mean-bytes", synth_opt.mean_bytes)->capture_default_str();
  synth_corpus->add_option("--out", synth_out, "corpus path")->required();
  synth_corpus->add_option("--lexicon-dir", synth_lex, "also write the demo word lists here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*build) return run_index(build_args, false);
    if (*focus) return run_index(focus_args, true);
    if (*adf) return run_unit_root(adf_args, true);
    if (*kpss) return run_unit_root(kpss_args, false);
    if (*granger) return run_granger(g);
    if (*regress) return run_regress(r);
    if (*montecarlo) return run_selftest(seed, mc_threads, mc_out);
    if (*synth_corpus) return run_synth(synth_opt, synth_out, synth_lex);
  } catch (const rss::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    switch (e.kind()) {
      case rss::ErrorKind::input: return kExitInput;
      case rss::ErrorKind::numerical: return kExitNumerical;
      case rss::ErrorKind::degenerate: return kExitDegenerate;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}
