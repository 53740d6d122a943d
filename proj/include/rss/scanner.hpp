#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rss/corpus.hpp"
#include "rss/counts.hpp"
#include "rss/lexicon.hpp"

namespace rss {

enum class ScanMode {
  whole_article,  // every hit in the article
  same_sentence,  // hits in sentences that contain the concept
  char_window,    // hits whose byte gap to some concept occurrence is <= radius
};

struct ScanConfig {
  static constexpr std::size_t kUnboundedRadius = std::numeric_limits<std::size_t>::max();

  ScanMode mode = ScanMode::whole_article;
  std::string concept_word;  // lowercase single token; required by the concept modes
  std::size_t radius = 100;  // bytes, char_window only
  std::size_t negation_window = 0;  // 0 disables; otherwise a hit preceded by a cue within k tokens is dropped
  std::vector<std::string> negation_cues{"not"};

  bool concept_mode() const noexcept { return mode != ScanMode::whole_article; }
  // Throws InputError for a missing concept, radius 0, or malformed cues.
  void validate() const;
};

struct ArticleCounts {
  std::uint64_t excitement = 0;
  std::uint64_t anxiety = 0;
  bool concept_present = false;

  friend bool operator==(const ArticleCounts&, const ArticleCounts&) = default;
};

ArticleCounts scan_text(std::string_view text, const Lexicon& lex, const ScanConfig& cfg);
inline ArticleCounts scan_article(const Article& a, const Lexicon& lex, const ScanConfig& cfg) {
  return scan_text(a.text, lex, cfg);
}

struct ScanStats {
  std::uint64_t records = 0;  // non-blank input lines
  std::uint64_t kept = 0;
  std::uint64_t dropped = 0;
  std::uint64_t parse_errors = 0;
  std::uint64_t concept_absent = 0;  // kept articles without the concept (concept modes)
  double seconds = 0.0;
  std::vector<std::string> first_errors;  // up to kMaxReportedErrors messages, in line order

  static constexpr std::size_t kMaxReportedErrors = 20;
  double articles_per_second() const { return seconds > 0 ? static_cast<double>(records) / seconds : 0.0; }
  ScanStats& operator+=(const ScanStats& o);
};

struct CorpusScan {
  DailyCounts daily;
  ScanStats stats;
};

// Single-threaded reference path.
CorpusScan scan_lines_serial(std::span<const std::string> lines, std::size_t first_line_no, const FilterSpec& filter,
                             const Lexicon& lex, const ScanConfig& cfg);

// OpenMP path; results are identical to the serial path for any thread count.
CorpusScan scan_lines_parallel(std::span<const std::string> lines, std::size_t first_line_no,
                               const FilterSpec& filter, const Lexicon& lex, const ScanConfig& cfg, int threads);

CorpusScan scan_articles(std::span<const Article> articles, const FilterSpec& filter, const Lexicon& lex,
                         const ScanConfig& cfg);

// Streams a corpus file in batches; threads <= 1 selects the serial path.
CorpusScan scan_corpus_file(const std::filesystem::path& path, const FilterSpec& filter, const Lexicon& lex,
                            const ScanConfig& cfg, int threads);

void merge_into(CorpusScan& into, const CorpusScan& from);

}  // namespace rss
