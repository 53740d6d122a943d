#include "rss/synthetic.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "rss/simulate.hpp"

namespace rss {

namespace {

const std::vector<std::string> kFiller{
    "the",     "market",  "shares",  "said",    "on",      "in",      "of",      "to",       "bank",
    "traders", "bond",    "yields",  "federal", "reserve", "analyst", "company", "percent",  "quarter",
    "rates",   "dollar",  "Treasury", "week",   "index",   "prices",  "funds",   "investors", "year",
    "credit",  "firms",   "Monday",  "Friday",  "policy",  "economy", "growth",  "It's",     "U.S.",
    "risk-averse", "officials", "data", "report", "while",  "after",   "before",  "as",       "with",
    // tokenizer edge cases: Latin-1, Greek and Cyrillic letters, apostrophes, U+00D7 as a separator
    "caf\u00e9", "Z\u00fcrich", "\u0395\u039a\u03a4", "\u0440\u044b\u043d\u043e\u043a", "don't", "fear's",
    "2\u00d7gain", "hope\u00e9", "'tis", "markets'"};

const std::vector<std::string> kDatelines{"NEW YORK", "WASHINGTON", "LONDON", "CHICAGO", "NEW YORK", "WASHINGTON"};
const std::vector<std::string> kTags{"ECO", "BNK", "MCE", "FIN", "SPO", "ODD", "WEA", "POL"};

}  // namespace

Lexicon demo_lexicon() {
  return Lexicon({"thrill", "gain", "hope", "optimism", "excited", "confident", "boost", "strong", "impressive",
                  "attractive", "ideal", "encouraging"},
                 {"fear", "fears", "worry", "worried", "anxious", "panic", "distress", "threat", "jittery",
                  "nervous", "uneasy", "doubt"});
}

std::vector<std::string> synthetic_corpus(const SyntheticCorpusOptions& opt, const Lexicon& lex) {
  sim::Rng rng(opt.seed);
  std::vector<std::string> excite(lex.excitement().begin(), lex.excitement().end());
  std::vector<std::string> anx(lex.anxiety().begin(), lex.anxiety().end());
  std::sort(excite.begin(), excite.end());
  std::sort(anx.begin(), anx.end());

  std::vector<std::string> lines;
  lines.reserve(opt.articles);
  for (std::size_t a = 0; a < opt.articles; ++a) {
    const double u = rng.uniform();
    if (u < opt.malformed_rate / 2) {
      lines.push_back("not json " + std::to_string(a));
      continue;
    }
    const Date day = opt.first_day + std::chrono::days{static_cast<int>(rng.below(static_cast<std::size_t>(opt.days)))};
    std::string date = format_date(day);
    if (u < opt.malformed_rate) date = "2008-13-40";

    const bool with_concept = rng.uniform() < opt.concept_rate;
    // Per-article tilt so that the index moves over time.
    const double tilt = 0.5 + 0.3 * std::sin(static_cast<double>(day.time_since_epoch().count()) / 60.0);
    std::string text = kDatelines[rng.below(kDatelines.size())] + " (Reuters) - ";
    if (rng.uniform() < 0.05) text.insert(0, "  ");
    const std::size_t target = opt.mean_bytes / 2 + rng.below(opt.mean_bytes);
    std::size_t in_sentence = 0;
    while (text.size() < target) {
      const double r = rng.uniform();
      std::string word;
      if (r < 0.05)
        word = rng.uniform() < tilt ? excite[rng.below(excite.size())] : anx[rng.below(anx.size())];
      else if (r < 0.05 + opt.negation_rate)
        word = "not";
      else if (with_concept && r < 0.09 + opt.negation_rate)
        word = rng.uniform() < 0.5 ? opt.concept_word : "Liquidity";
      else
        word = kFiller[rng.below(kFiller.size())];
      if (rng.uniform() < 0.03 && !word.empty()) word[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(word[0])));
      text += word;
      ++in_sentence;
      const double p = rng.uniform();
      if (in_sentence > 6 && p < 0.12) {
        text += p < 0.09 ? ". " : (p < 0.105 ? "! " : "? ");
        in_sentence = 0;
      } else if (p < 0.2) {
        text += ", ";
      } else if (p < 0.21) {
        text += " – ";
      } else {
        text += ' ';
      }
    }

    std::vector<std::string> tags;
    const auto ntags = 1 + rng.below(3);
    for (std::size_t k = 0; k < ntags; ++k) {
      tags.push_back(kTags[rng.below(kTags.size())]);
      if (rng.uniform() < 0.05) std::transform(tags.back().begin(), tags.back().end(), tags.back().begin(), ::tolower);
    }

    nlohmann::ordered_json j;
    j["date"] = date;
    j["language"] = rng.uniform() < 0.95 ? "en" : "de";
    j["text"] = text;
    j["attribution"] = rng.uniform() < 0.93 ? "Reuters" : "AP";
    if (rng.uniform() < 0.5) {
      std::string joined;
      for (const auto& t : tags) joined += (joined.empty() ? "" : ",") + t;
      j["tags"] = joined;
    } else {
      j["tags"] = tags;
    }
    if (rng.uniform() < 0.1) j["headline"] = "ignored field";
    lines.push_back(j.dump());
  }
  return lines;
}

void write_synthetic_corpus(std::ostream& out, const SyntheticCorpusOptions& opt, const Lexicon& lex) {
  for (const auto& line : synthetic_corpus(opt, lex)) out << line << '\n';
}

}  // namespace rss
