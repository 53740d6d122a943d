#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace rss {

// A word in article text. Offsets are byte offsets into the original UTF-8.
struct Token {
  std::string text;  // lowercased
  std::size_t start = 0;
  std::size_t end = 0;  // one past the last byte

  friend bool operator==(const Token&, const Token&) = default;
};

// Maximal runs of letters with internal apostrophes, lowercased (ASCII case folding only).
// Letters are ASCII A-Z/a-z plus the Latin-1/Latin Extended, Greek and Cyrillic blocks.
std::vector<Token> tokenize(std::string_view text);

namespace detail {

inline constexpr std::array<std::uint8_t, 256> kAsciiLower = [] {
  std::array<std::uint8_t, 256> t{};
  for (int c = 0; c < 256; ++c) t[c] = static_cast<std::uint8_t>(c >= 'A' && c <= 'Z' ? c + 32 : c);
  return t;
}();

inline constexpr std::array<bool, 256> kAsciiAlpha = [] {
  std::array<bool, 256> t{};
  for (int c = 'a'; c <= 'z'; ++c) t[c] = true;
  for (int c = 'A'; c <= 'Z'; ++c) t[c] = true;
  return t;
}();

// Byte length of the letter starting at text[i], or 0 when text[i] does not start a letter.
inline std::size_t letter_length(std::string_view text, std::size_t i) {
  const auto b0 = static_cast<unsigned char>(text[i]);
  if (b0 < 0x80) return kAsciiAlpha[b0] ? 1 : 0;
  if (b0 < 0xC2 || b0 > 0xDF || i + 1 >= text.size()) return 0;
  const auto b1 = static_cast<unsigned char>(text[i + 1]);
  if ((b1 & 0xC0) != 0x80) return 0;
  const unsigned cp = ((b0 & 0x1Fu) << 6) | (b1 & 0x3Fu);
  if (cp >= 0xC0 && cp <= 0x24F) return (cp == 0xD7 || cp == 0xF7) ? 0 : 2;
  if (cp >= 0x370 && cp <= 0x4FF) return 2;
  return 0;
}

}  // namespace detail

// Streams tokens without allocating per token. `fn(lowered, start, end)` receives a view into
// `scratch`, which is valid only for the duration of the call.
template <class Fn>
void for_each_token(std::string_view text, std::string& scratch, Fn&& fn) {
  const std::size_t n = text.size();
  // A lowered token is never longer than its source bytes.
  if (scratch.size() < n) scratch.resize(n);
  char* const buf = scratch.data();
  const auto* const src = reinterpret_cast<const unsigned char*>(text.data());
  std::size_t i = 0;
  while (i < n) {
    std::size_t len = detail::letter_length(text, i);
    if (len == 0) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    std::size_t w = 0;
    for (;;) {
      for (std::size_t k = 0; k < len; ++k) buf[w++] = static_cast<char>(detail::kAsciiLower[src[i + k]]);
      i += len;
      while (i < n && detail::kAsciiAlpha[src[i]]) buf[w++] = static_cast<char>(detail::kAsciiLower[src[i++]]);
      if (i >= n) break;
      len = detail::letter_length(text, i);
      if (len != 0) continue;
      if (src[i] == '\'' && i + 1 < n && detail::letter_length(text, i + 1) != 0) {
        buf[w++] = '\'';
        ++i;
        len = detail::letter_length(text, i);
        continue;
      }
      break;
    }
    fn(std::string_view(buf, w), start, i);
  }
}

}  // namespace rss
