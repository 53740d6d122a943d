#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "rss/date.hpp"
#include "rss/lexicon.hpp"

namespace rss {

struct SyntheticCorpusOptions {
  std::size_t articles = 10000;
  std::uint64_t seed = 1;
  Date first_day = make_date(1999, 1, 1);
  int days = 730;
  std::size_t mean_bytes = 2000;
  double concept_rate = 0.4;   // articles mentioning the concept word
  double negation_rate = 0.03;  // probability a word is "not"
  double malformed_rate = 0.005;
  std::string concept_word = "liquidity";
};

// Small demonstration word lists (not a validated lexicon).
Lexicon demo_lexicon();

// Newswire-like JSON lines: mixed datelines, attributions, languages and tags, some malformed records.
std::vector<std::string> synthetic_corpus(const SyntheticCorpusOptions& opt, const Lexicon& lex);
void write_synthetic_corpus(std::ostream& out, const SyntheticCorpusOptions& opt, const Lexicon& lex);

}  // namespace rss
