#include "rss/scanner.hpp"

#include <omp.h>

#include <algorithm>
#include <chrono>
#include <unordered_map>
#include <utility>

#include "rss/error.hpp"
#include "rss/tokenize.hpp"

namespace rss {

namespace {

struct Span {
  std::size_t start;
  std::size_t end;
  std::size_t sentence;
};

struct Hit {
  Span span;
  EmotionGroup group;
};

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

// True when [from, to) holds '.', '!' or '?' followed by whitespace or end of text.
bool has_sentence_break(std::string_view text, std::size_t from, std::size_t to) {
  for (std::size_t i = from; i < to; ++i) {
    const char c = text[i];
    if ((c == '.' || c == '!' || c == '?') && (i + 1 == text.size() || is_space(text[i + 1]))) return true;
  }
  return false;
}

std::size_t gap(const Span& a, const Span& b) {
  if (b.start >= a.end) return b.start - a.end;
  if (a.start >= b.end) return a.start - b.end;
  return 0;
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return is_space(c); });
}

// Per-thread accumulator used by both corpus paths.
struct Accumulator {
  std::unordered_map<Date::rep, EmotionCounts> days;
  ScanStats stats;
  std::vector<std::pair<std::size_t, std::string>> errors;

  void note_error(const ParseError& e) {
    ++stats.parse_errors;
    errors.emplace_back(e.line(), e.what());
    if (errors.size() > 2 * ScanStats::kMaxReportedErrors) trim_errors();
  }
  void trim_errors() {
    std::sort(errors.begin(), errors.end());
    if (errors.size() > ScanStats::kMaxReportedErrors) errors.resize(ScanStats::kMaxReportedErrors);
  }

  void process(std::string_view line, std::size_t line_no, const FilterSpec& filter, const Lexicon& lex,
               const ScanConfig& cfg) {
    if (blank(line)) return;
    ++stats.records;
    Article a;
    try {
      a = parse_article(line, line_no);
    } catch (const ParseError& e) {
      note_error(e);
      return;
    }
    add(a, filter, lex, cfg);
  }

  void add(const Article& a, const FilterSpec& filter, const Lexicon& lex, const ScanConfig& cfg) {
    if (!filter_article(a, filter)) {
      ++stats.dropped;
      return;
    }
    ++stats.kept;
    const auto c = scan_text(a.text, lex, cfg);
    if (cfg.concept_mode() && !c.concept_present) {
      ++stats.concept_absent;
      return;
    }
    days[a.date.time_since_epoch().count()] += EmotionCounts{c.excitement, c.anxiety, 1};
  }

  void merge(Accumulator&& o) {
    for (const auto& [d, c] : o.days) days[d] += c;
    stats += o.stats;
    errors.insert(errors.end(), std::make_move_iterator(o.errors.begin()), std::make_move_iterator(o.errors.end()));
    trim_errors();
  }

  CorpusScan finish() {
    trim_errors();
    CorpusScan out;
    for (const auto& [d, c] : days) out.daily[Date{Date::duration{d}}] += c;
    out.stats = stats;
    out.stats.first_errors.clear();
    for (auto& [line, msg] : errors) out.stats.first_errors.push_back(std::move(msg));
    return out;
  }
};

}  // namespace

void ScanConfig::validate() const {
  if (concept_mode()) {
    const auto toks = tokenize(concept_word);
    if (toks.size() != 1 || toks[0].text != concept_word)
      throw InputError("concept must be a single lowercase word, got '" + concept_word + "'");
  }
  if (mode == ScanMode::char_window && radius == 0) throw InputError("character window radius must be positive");
  if (negation_window > 0) {
    if (negation_cues.empty()) throw InputError("negation enabled with no cue words");
    for (const auto& cue : negation_cues) {
      const auto toks = tokenize(cue);
      if (toks.size() != 1 || toks[0].text != cue) throw InputError("negation cue '" + cue + "' is not a lowercase word");
    }
  }
}

ArticleCounts scan_text(std::string_view text, const Lexicon& lex, const ScanConfig& cfg) {
  thread_local std::string scratch;
  thread_local std::vector<Hit> hits;
  thread_local std::vector<Span> concepts;

  ArticleCounts out;
  const bool concept_mode = cfg.concept_mode();
  const bool track_sentences = cfg.mode == ScanMode::same_sentence;
  const bool negation = cfg.negation_window > 0;
  hits.clear();
  concepts.clear();

  std::size_t index = 0;
  std::size_t last_cue = 0;
  bool seen_cue = false;
  std::size_t sentence = 0;
  std::size_t prev_end = 0;

  for_each_token(text, scratch, [&](std::string_view word, std::size_t start, std::size_t end) {
    if (track_sentences && index > 0 && has_sentence_break(text, prev_end, start)) ++sentence;
    prev_end = end;
    const auto group = lex.classify(word);
    if (group != EmotionGroup::none) {
      const bool negated = negation && seen_cue && index - last_cue <= cfg.negation_window;
      if (!negated) {
        if (concept_mode) {
          hits.push_back(Hit{{start, end, sentence}, group});
        } else if (group == EmotionGroup::excitement) {
          ++out.excitement;
        } else {
          ++out.anxiety;
        }
      }
    }
    if (concept_mode && word == cfg.concept_word) concepts.push_back({start, end, sentence});
    if (negation && std::find(cfg.negation_cues.begin(), cfg.negation_cues.end(), word) != cfg.negation_cues.end()) {
      last_cue = index;
      seen_cue = true;
    }
    ++index;
  });

  if (!concept_mode) return out;
  out.concept_present = !concepts.empty();
  if (!out.concept_present) return out;

  const auto count = [&](const Hit& h) {
    if (h.group == EmotionGroup::excitement)
      ++out.excitement;
    else
      ++out.anxiety;
  };

  if (cfg.mode == ScanMode::same_sentence) {
    std::size_t j = 0;
    for (const auto& h : hits) {
      while (j < concepts.size() && concepts[j].sentence < h.span.sentence) ++j;
      if (j < concepts.size() && concepts[j].sentence == h.span.sentence) count(h);
    }
    return out;
  }

  // char_window: hits and concepts are both in positional order, so the nearest concept is
  // the last one ending at or before the hit or the first one after it.
  std::size_t j = 0;
  for (const auto& h : hits) {
    while (j < concepts.size() && concepts[j].end <= h.span.start) ++j;
    std::size_t best = ScanConfig::kUnboundedRadius;
    if (j > 0) best = std::min(best, gap(h.span, concepts[j - 1]));
    if (j < concepts.size()) best = std::min(best, gap(h.span, concepts[j]));
    if (cfg.radius == ScanConfig::kUnboundedRadius || best <= cfg.radius) count(h);
  }
  return out;
}

ScanStats& ScanStats::operator+=(const ScanStats& o) {
  records += o.records;
  kept += o.kept;
  dropped += o.dropped;
  parse_errors += o.parse_errors;
  concept_absent += o.concept_absent;
  return *this;
}

CorpusScan scan_lines_serial(std::span<const std::string> lines, std::size_t first_line_no, const FilterSpec& filter,
                             const Lexicon& lex, const ScanConfig& cfg) {
  Accumulator acc;
  for (std::size_t i = 0; i < lines.size(); ++i) acc.process(lines[i], first_line_no + i, filter, lex, cfg);
  return acc.finish();
}

CorpusScan scan_lines_parallel(std::span<const std::string> lines, std::size_t first_line_no,
                               const FilterSpec& filter, const Lexicon& lex, const ScanConfig& cfg, int threads) {
  Accumulator total;
  const auto n = static_cast<std::ptrdiff_t>(lines.size());
#pragma omp parallel num_threads(std::max(threads, 1))
  {
    Accumulator local;
#pragma omp for schedule(dynamic, 64) nowait
    for (std::ptrdiff_t i = 0; i < n; ++i)
      local.process(lines[static_cast<std::size_t>(i)], first_line_no + static_cast<std::size_t>(i), filter, lex, cfg);
#pragma omp critical(rss_scan_merge)
    total.merge(std::move(local));
  }
  return total.finish();
}

CorpusScan scan_articles(std::span<const Article> articles, const FilterSpec& filter, const Lexicon& lex,
                         const ScanConfig& cfg) {
  Accumulator acc;
  for (const auto& a : articles) {
    ++acc.stats.records;
    acc.add(a, filter, lex, cfg);
  }
  return acc.finish();
}

void merge_into(CorpusScan& into, const CorpusScan& from) {
  for (const auto& [d, c] : from.daily) into.daily[d] += c;
  into.stats += from.stats;
  for (const auto& e : from.stats.first_errors) {
    if (into.stats.first_errors.size() >= ScanStats::kMaxReportedErrors) break;
    into.stats.first_errors.push_back(e);
  }
}

CorpusScan scan_corpus_file(const std::filesystem::path& path, const FilterSpec& filter, const Lexicon& lex,
                            const ScanConfig& cfg, int threads) {
  filter.validate();
  cfg.validate();
  const auto t0 = std::chrono::steady_clock::now();
  LineReader reader(path);
  CorpusScan total;
  std::vector<std::string> lines;
  std::size_t first = 1;
  while (reader.next_batch(lines, first)) {
    auto part = threads <= 1 ? scan_lines_serial(lines, first, filter, lex, cfg)
                             : scan_lines_parallel(lines, first, filter, lex, cfg, threads);
    merge_into(total, part);
  }
  total.stats.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return total;
}

}  // namespace rss
