// Serial vs OpenMP corpus scan over a synthetic 2 KB-per-article corpus.
#include <benchmark/benchmark.h>

#include "rss/scanner.hpp"
#include "rss/synthetic.hpp"

namespace {

const std::vector<std::string>& corpus() {
  static const auto lines = [] {
    rss::SyntheticCorpusOptions opt;
    opt.articles = 20000;
    opt.seed = 7;
    return rss::synthetic_corpus(opt, rss::demo_lexicon());
  }();
  return lines;
}

rss::ScanConfig config(int mode) {
  rss::ScanConfig cfg;
  cfg.mode = static_cast<rss::ScanMode>(mode);
  if (cfg.concept_mode()) cfg.concept_word = "liquidity";
  return cfg;
}

void BM_ScanSerial(benchmark::State& state) {
  const auto lex = rss::demo_lexicon();
  const auto cfg = config(static_cast<int>(state.range(0)));
  const auto filter = rss::FilterSpec::preset("none");
  for (auto _ : state) benchmark::DoNotOptimize(rss::scan_lines_serial(corpus(), 1, filter, lex, cfg));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
}

void BM_ScanParallel(benchmark::State& state) {
  const auto lex = rss::demo_lexicon();
  const auto cfg = config(static_cast<int>(state.range(0)));
  const auto filter = rss::FilterSpec::preset("none");
  const int threads = static_cast<int>(state.range(1));
  for (auto _ : state) benchmark::DoNotOptimize(rss::scan_lines_parallel(corpus(), 1, filter, lex, cfg, threads));
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(corpus().size()));
}

}  // namespace

BENCHMARK(BM_ScanSerial)->DenseRange(0, 2)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_ScanParallel)->ArgsProduct({{0, 1, 2}, {1, 2, 4}})->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
