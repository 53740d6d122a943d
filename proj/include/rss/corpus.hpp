#pragma once

#include <cstddef>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rss/date.hpp"
#include "rss/error.hpp"

namespace rss {

struct Article {
  Date date;
  std::string language;
  std::string text;
  std::string attribution;
  std::vector<std::string> tags;  // uppercased
};

// A malformed corpus record. Recoverable: scanning counts it and moves on.
class ParseError : public InputError {
 public:
  ParseError(std::size_t line, const std::string& reason)
      : InputError("line " + std::to_string(line) + ": " + reason), line_(line), reason_(reason) {}
  std::size_t line() const noexcept { return line_; }
  const std::string& reason() const noexcept { return reason_; }

 private:
  std::size_t line_;
  std::string reason_;
};

// Parses one JSON-object line. `tags` may be a comma-separated string or an array of strings.
// Unknown fields are ignored. Throws ParseError.
Article parse_article(std::string_view record, std::size_t line_no);

struct FilterSpec {
  std::string required_attribution;  // empty: any
  std::string required_language;     // empty: any
  std::vector<std::string> dateline_allow;  // empty: any text
  std::vector<std::string> dateline_deny;
  std::vector<std::string> excluded_tags;
  std::optional<Date> from;  // inclusive
  std::optional<Date> to;    // inclusive

  // Throws InputError when tags are not uppercase or allow/deny overlap.
  void validate() const;

  // "us": Reuters/en, datelines NEW YORK or WASHINGTON, LONDON denied, SPO/ODD/WEA excluded.
  // "uk": Reuters/en, dateline LONDON, same tag exclusions. "none": keep everything.
  static FilterSpec preset(std::string_view name);
};

bool filter_article(const Article& a, const FilterSpec& f);

// Reads a JSON-lines corpus in batches of whole lines. Files ending in `.gz` are decompressed.
class LineReader {
 public:
  explicit LineReader(const std::filesystem::path& path);
  ~LineReader();
  LineReader(const LineReader&) = delete;
  LineReader& operator=(const LineReader&) = delete;

  // Replaces `lines` with up to roughly `max_bytes` of complete lines (CR/LF stripped).
  // `first_line_no` receives the 1-based number of lines[0]. Returns false at end of input.
  bool next_batch(std::vector<std::string>& lines, std::size_t& first_line_no, std::size_t max_bytes = 32u << 20);

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace rss
