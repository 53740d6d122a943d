#pragma once

// Deliberately naive scanner used as an oracle. Shares no code with the library: JSON via
// nlohmann, tokens from decoded code points, proximity by brute force over all pairs.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace ref {

struct Token {
  std::string text;
  std::size_t start, end;
};

std::vector<Token> tokenize(const std::string& text);

struct Options {
  std::string mode = "article";  // article | sentence | window
  std::string concept_word;
  std::optional<std::size_t> radius;  // nullopt: unbounded
  std::size_t negation = 0;
  std::set<std::string> cues{"not"};
};

struct Counts {
  std::uint64_t excitement = 0, anxiety = 0;
  bool concept_present = false;
};

Counts scan(const std::string& text, const std::set<std::string>& excitement, const std::set<std::string>& anxiety,
            const Options& opt);

struct Filter {
  std::string attribution, language;
  std::vector<std::string> allow, deny;
  std::set<std::string> excluded_tags;
};
Filter us_filter();
Filter no_filter();

// Whole pipeline: JSON lines -> monthly index CSV text, same header and number format as the tool.
std::string index_csv(const std::vector<std::string>& lines, const std::set<std::string>& excitement,
                      const std::set<std::string>& anxiety, const Filter& filter, const Options& opt);

}  // namespace ref
