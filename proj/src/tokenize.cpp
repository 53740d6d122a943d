#include "rss/tokenize.hpp"

namespace rss {

std::vector<Token> tokenize(std::string_view text) {
  std::vector<Token> out;
  std::string scratch;
  for_each_token(text, scratch, [&](std::string_view word, std::size_t start, std::size_t end) {
    out.push_back(Token{std::string(word), start, end});
  });
  return out;
}

}  // namespace rss
