#include "rss/lexicon.hpp"

#include <algorithm>
#include <fstream>

#include "rss/error.hpp"
#include "rss/tokenize.hpp"

namespace rss {

namespace {

std::string trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\n'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

WordSet build_set(const std::vector<std::string>& words, const char* group) {
  WordSet out;
  for (const auto& raw : words) {
    if (raw.empty()) throw InputError(std::string(group) + " lexicon: empty entry");
    const auto toks = tokenize(raw);
    if (toks.size() != 1 || toks[0].start != 0 || toks[0].end != raw.size())
      throw InputError(std::string(group) + " lexicon: '" + raw + "' is not a single word");
    out.insert(toks[0].text);
  }
  if (out.empty()) throw InputError(std::string(group) + " lexicon is empty");
  return out;
}

}  // namespace

Lexicon::Lexicon(const std::vector<std::string>& excitement, const std::vector<std::string>& anxiety)
    : excitement_(build_set(excitement, "excitement")), anxiety_(build_set(anxiety, "anxiety")) {
  std::vector<std::string> overlap;
  for (const auto& w : excitement_)
    if (anxiety_.contains(w)) overlap.push_back(w);
  if (!overlap.empty()) {
    std::sort(overlap.begin(), overlap.end());
    std::string msg = "word(s) present in both lexicons:";
    for (const auto& w : overlap) msg += " " + w;
    throw InputError(msg);
  }
  std::size_t size = 16;
  while (size < 2 * (excitement_.size() + anxiety_.size())) size *= 2;
  table_.assign(size, Slot{});
  mask_ = size - 1;
  for (const auto* set : {&excitement_, &anxiety_}) {
    const auto group = set == &excitement_ ? EmotionGroup::excitement : EmotionGroup::anxiety;
    for (const auto& w : *set) {
      std::size_t slot = fnv1a(w) & mask_;
      while (table_[slot].group != EmotionGroup::none) slot = (slot + 1) & mask_;
      table_[slot] = Slot{w, group};
      shape_[static_cast<unsigned char>(w[0])] |= std::uint64_t{1} << std::min<std::size_t>(w.size(), 63);
    }
  }
}

void Lexicon::save(const std::filesystem::path& excitement_path, const std::filesystem::path& anxiety_path) const {
  const auto write = [](const std::filesystem::path& p, const WordSet& words) {
    std::vector<std::string> sorted(words.begin(), words.end());
    std::sort(sorted.begin(), sorted.end());
    std::ofstream out(p, std::ios::binary);
    if (!out) throw InputError("cannot write " + p.string());
    for (const auto& w : sorted) out << w << '\n';
  };
  write(excitement_path, excitement_);
  write(anxiety_path, anxiety_);
}

std::vector<std::string> read_word_list(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open word list " + path.string());
  std::vector<std::string> words;
  std::string line;
  while (std::getline(in, line)) {
    auto word = trim(line);
    if (word.empty() || word.front() == '#') continue;
    words.push_back(std::move(word));
  }
  return words;
}

Lexicon load_lexicon(const std::filesystem::path& excitement_path, const std::filesystem::path& anxiety_path) {
  return Lexicon(read_word_list(excitement_path), read_word_list(anxiety_path));
}

}  // namespace rss
