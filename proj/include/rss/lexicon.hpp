#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace rss {

struct TransparentStringHash {
  using is_transparent = void;
  std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
};

using WordSet = std::unordered_set<std::string, TransparentStringHash, std::equal_to<>>;

enum class EmotionGroup : std::uint8_t { none, excitement, anxiety };

// The two emotion word lists. Immutable once constructed; safe to share across threads.
class Lexicon {
 public:
  // Lowercases and validates. Throws InputError on empty lists, overlap, or entries that are
  // not a single token.
  Lexicon(const std::vector<std::string>& excitement, const std::vector<std::string>& anxiety);

  const WordSet& excitement() const noexcept { return excitement_; }
  const WordSet& anxiety() const noexcept { return anxiety_; }

  // `word` must already be lowercase.
  EmotionGroup classify(std::string_view word) const {
    if (word.empty() || !(shape_[static_cast<unsigned char>(word[0])] >> std::min<std::size_t>(word.size(), 63) & 1))
      return EmotionGroup::none;
    for (std::size_t slot = fnv1a(word) & mask_;; slot = (slot + 1) & mask_) {
      const auto& e = table_[slot];
      if (e.group == EmotionGroup::none) return EmotionGroup::none;
      if (e.word == word) return e.group;
    }
  }

  void save(const std::filesystem::path& excitement_path, const std::filesystem::path& anxiety_path) const;

  friend bool operator==(const Lexicon& a, const Lexicon& b) {
    return a.excitement_ == b.excitement_ && a.anxiety_ == b.anxiety_;
  }

 private:
  WordSet excitement_;
  WordSet anxiety_;
  // Open addressing with linear probing, load factor <= 1/2; empty slots have group none.
  struct Slot {
    std::string word;
    EmotionGroup group = EmotionGroup::none;
  };
  static std::uint64_t fnv1a(std::string_view s) noexcept {
    std::uint64_t h = 14695981039346656037ull;
    for (const char c : s) h = (h ^ static_cast<unsigned char>(c)) * 1099511628211ull;
    return h;
  }
  std::vector<Slot> table_;
  std::size_t mask_ = 0;
  // shape_[first byte] has bit min(length, 63) set for every entry; rejects most words before hashing.
  std::array<std::uint64_t, 256> shape_{};
};

// One word per line; `#` starts a comment line; blank lines skipped; CRLF accepted.
std::vector<std::string> read_word_list(const std::filesystem::path& path);

Lexicon load_lexicon(const std::filesystem::path& excitement_path, const std::filesystem::path& anxiety_path);

}  // namespace rss
