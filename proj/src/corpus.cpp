#include "rss/corpus.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstdio>

#if defined(__SSE2__) && !defined(RAPIDJSON_SSE2)
#define RAPIDJSON_SSE2
#endif
#include <rapidjson/document.h>
#include <rapidjson/error/en.h>

namespace rss {

namespace {

std::string upper_trimmed(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  std::string out(s);
  for (auto& c : out)
    if (c >= 'a' && c <= 'z') c = static_cast<char>(c - 32);
  return out;
}

std::string_view string_field(const rapidjson::Value& obj, const char* name, std::size_t line, bool required) {
  const auto it = obj.FindMember(name);
  if (it == obj.MemberEnd() || it->value.IsNull()) {
    if (required) throw ParseError(line, std::string("missing field '") + name + "'");
    return {};
  }
  if (!it->value.IsString()) throw ParseError(line, std::string("field '") + name + "' is not a string");
  return {it->value.GetString(), it->value.GetStringLength()};
}

std::string_view strip_leading_ws(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r' || s.front() == '\n'))
    s.remove_prefix(1);
  return s;
}

}  // namespace

Article parse_article(std::string_view record, std::size_t line_no) {
  // Reuse one parse arena per thread; a fresh Document allocates a 64 KB chunk per record.
  thread_local rapidjson::MemoryPoolAllocator<> pool;
  pool.Clear();
  // In-situ parsing of a NUL-terminated copy takes rapidjson's SIMD string path.
  thread_local std::string buffer;
  buffer.assign(record);
  rapidjson::Document doc(&pool);
  doc.ParseInsitu(buffer.data());
  if (doc.HasParseError())
    throw ParseError(line_no, std::string("invalid JSON: ") + rapidjson::GetParseError_En(doc.GetParseError()));
  if (!doc.IsObject()) throw ParseError(line_no, "record is not a JSON object");

  Article a;
  const auto date_text = string_field(doc, "date", line_no, true);
  const auto date = parse_date(date_text);
  if (!date) throw ParseError(line_no, "invalid date '" + std::string(date_text) + "'");
  a.date = *date;
  a.language = string_field(doc, "language", line_no, true);
  a.text = string_field(doc, "text", line_no, true);
  a.attribution = string_field(doc, "attribution", line_no, true);

  const auto tags = doc.FindMember("tags");
  if (tags == doc.MemberEnd() || tags->value.IsNull()) {
    // no tags
  } else if (tags->value.IsString()) {
    std::string_view rest(tags->value.GetString(), tags->value.GetStringLength());
    while (!rest.empty()) {
      const auto comma = rest.find(',');
      auto tag = upper_trimmed(rest.substr(0, comma));
      if (!tag.empty()) a.tags.push_back(std::move(tag));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
  } else if (tags->value.IsArray()) {
    for (const auto& t : tags->value.GetArray()) {
      if (!t.IsString()) throw ParseError(line_no, "non-string entry in 'tags'");
      auto tag = upper_trimmed({t.GetString(), t.GetStringLength()});
      if (!tag.empty()) a.tags.push_back(std::move(tag));
    }
  } else {
    throw ParseError(line_no, "field 'tags' must be a string or an array");
  }
  return a;
}

void FilterSpec::validate() const {
  for (const auto& t : excluded_tags)
    if (t != upper_trimmed(t) || t.empty()) throw InputError("excluded tag '" + t + "' must be uppercase");
  for (const auto& a : dateline_allow)
    if (std::find(dateline_deny.begin(), dateline_deny.end(), a) != dateline_deny.end())
      throw InputError("dateline '" + a + "' is both allowed and denied");
  if (from && to && *from > *to) throw InputError("date range is empty (from > to)");
}

FilterSpec FilterSpec::preset(std::string_view name) {
  FilterSpec f;
  if (name == "none") return f;
  f.required_attribution = "Reuters";
  f.required_language = "en";
  f.excluded_tags = {"SPO", "ODD", "WEA"};
  if (name == "us") {
    f.dateline_allow = {"NEW YORK", "WASHINGTON"};
    f.dateline_deny = {"LONDON"};
  } else if (name == "uk") {
    f.dateline_allow = {"LONDON"};
  } else {
    throw InputError("unknown filter preset '" + std::string(name) + "' (expected us, uk or none)");
  }
  return f;
}

bool filter_article(const Article& a, const FilterSpec& f) {
  if (!f.required_attribution.empty() && a.attribution != f.required_attribution) return false;
  if (!f.required_language.empty() && a.language != f.required_language) return false;
  if (f.from && a.date < *f.from) return false;
  if (f.to && a.date > *f.to) return false;
  const auto body = strip_leading_ws(a.text);
  if (!f.dateline_allow.empty() &&
      std::none_of(f.dateline_allow.begin(), f.dateline_allow.end(),
                   [&](const std::string& p) { return body.starts_with(p); }))
    return false;
  if (std::any_of(f.dateline_deny.begin(), f.dateline_deny.end(),
                  [&](const std::string& p) { return body.starts_with(p); }))
    return false;
  for (const auto& t : a.tags)
    if (std::find(f.excluded_tags.begin(), f.excluded_tags.end(), t) != f.excluded_tags.end()) return false;
  return true;
}

struct LineReader::Impl {
  gzFile gz = nullptr;
  std::FILE* plain = nullptr;
  std::string pending;
  std::size_t next_line_no = 1;
  bool eof = false;

  std::size_t read(char* buf, std::size_t n) {
    if (gz) {
      const int got = gzread(gz, buf, static_cast<unsigned>(n));
      if (got < 0) {
        int errnum = 0;
        throw InputError(std::string("gzip read error: ") + gzerror(gz, &errnum));
      }
      return static_cast<std::size_t>(got);
    }
    return std::fread(buf, 1, n, plain);
  }
};

LineReader::LineReader(const std::filesystem::path& path) : impl_(std::make_unique<Impl>()) {
  if (path.extension() == ".gz") {
    impl_->gz = gzopen(path.c_str(), "rb");
    if (!impl_->gz) throw InputError("cannot open corpus " + path.string());
    gzbuffer(impl_->gz, 1u << 20);
  } else {
    impl_->plain = std::fopen(path.c_str(), "rb");
    if (!impl_->plain) throw InputError("cannot open corpus " + path.string());
  }
}

LineReader::~LineReader() {
  if (impl_->gz) gzclose(impl_->gz);
  if (impl_->plain) std::fclose(impl_->plain);
}

bool LineReader::next_batch(std::vector<std::string>& lines, std::size_t& first_line_no, std::size_t max_bytes) {
  lines.clear();
  first_line_no = impl_->next_line_no;
  std::string& buf = impl_->pending;
  std::size_t consumed_bytes = 0;
  constexpr std::size_t kChunk = 1u << 20;
  std::size_t scan_from = 0;
  for (;;) {
    // Split complete lines out of the pending buffer.
    std::size_t pos = 0;
    for (;;) {
      const auto nl = buf.find('\n', std::max(pos, scan_from));
      if (nl == std::string::npos) break;
      std::size_t end = nl;
      if (end > pos && buf[end - 1] == '\r') --end;
      lines.emplace_back(buf, pos, end - pos);
      consumed_bytes += nl + 1 - pos;
      pos = nl + 1;
      scan_from = pos;
      if (consumed_bytes >= max_bytes) break;
    }
    buf.erase(0, pos);
    scan_from = buf.size();
    if (consumed_bytes >= max_bytes) break;
    if (impl_->eof) {
      if (!buf.empty()) {
        if (buf.back() == '\r') buf.pop_back();
        lines.push_back(std::move(buf));
        buf.clear();
      }
      break;
    }
    const auto old = buf.size();
    buf.resize(old + kChunk);
    const auto got = impl_->read(buf.data() + old, kChunk);
    buf.resize(old + got);
    if (got == 0) impl_->eof = true;
  }
  impl_->next_line_no += lines.size();
  return !lines.empty();
}

}  // namespace rss
