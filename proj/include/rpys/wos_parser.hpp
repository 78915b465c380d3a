#pragma once

// Web of Science export ingestion: the field-tagged plain-text format
// ("savedrecs.txt") and the tab-delimited format, plus the grammar for the
// compact cited-reference strings stored under the CR tag.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "rpys/normalize.hpp"
#include "rpys/text.hpp"

namespace rpys {

enum class ExportFormat { tagged, tab_delimited };

enum class ParseMode { lenient, strict };

class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

inline bool is_field_tag(std::string_view tag) {
  if (tag.size() != 2) return false;
  for (char c : tag)
    if (!((c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9'))) return false;
  return true;
}

/// One exported record: field tags in first-seen order, each with its value
/// lines.
class RawRecord {
 public:
  using Field = std::pair<std::string, std::vector<std::string>>;

  void add(std::string_view tag, std::string value) {
    if (!is_field_tag(tag)) throw std::invalid_argument("invalid field tag '" + std::string(tag) + "'");
    for (auto& [t, values] : fields_) {
      if (t == tag) {
        values.push_back(std::move(value));
        return;
      }
    }
    fields_.emplace_back(std::string(tag), std::vector<std::string>{std::move(value)});
  }

  const std::vector<std::string>* find(std::string_view tag) const {
    for (const auto& [t, values] : fields_)
      if (t == tag) return &values;
    return nullptr;
  }

  std::optional<std::string> first(std::string_view tag) const {
    const auto* v = find(tag);
    if (v == nullptr || v->empty()) return std::nullopt;
    return v->front();
  }

  /// All lines of `tag` joined with single spaces (multi-line titles etc.).
  std::optional<std::string> joined(std::string_view tag) const {
    const auto* v = find(tag);
    if (v == nullptr || v->empty()) return std::nullopt;
    std::string out;
    for (const auto& line : *v) {
      if (!out.empty()) out.push_back(' ');
      out += line;
    }
    return out;
  }

  const std::vector<Field>& fields() const noexcept { return fields_; }
  bool empty() const noexcept { return fields_.empty(); }

  /// Drops empty CR lines; removes the CR field if nothing remains.
  void tidy_cited_references() {
    for (auto it = fields_.begin(); it != fields_.end(); ++it) {
      if (it->first != "CR") continue;
      auto& v = it->second;
      std::erase_if(v, [](const std::string& s) { return text::trim(s).empty(); });
      if (v.empty()) fields_.erase(it);
      return;
    }
  }

  friend bool operator==(const RawRecord&, const RawRecord&) = default;

 private:
  std::vector<Field> fields_;
};

struct CitedReference {
  std::string raw;
  std::optional<std::string> first_author;
  std::optional<int> year;
  std::optional<std::string> source;
  std::optional<std::string> volume;
  std::optional<std::string> page;
  std::optional<std::string> doi;

  friend bool operator==(const CitedReference&, const CitedReference&) = default;
};

struct MalformedRecord {
  std::size_t line = 0;  // 1-based line where the offending block starts
  std::string reason;
};

struct ParseDiagnostics {
  std::size_t records_parsed = 0;
  std::size_t cr_lines_parsed = 0;
  std::size_t cr_lines_without_year = 0;
  std::vector<MalformedRecord> malformed_records;

  std::size_t record_blocks() const noexcept { return records_parsed + malformed_records.size(); }
};

struct ParsedExport {
  std::vector<RawRecord> records;
  ParseDiagnostics diagnostics;
};

inline constexpr int kMinParsedYear = 1000;
inline constexpr int kMaxParsedYear = 2100;

namespace detail {

inline std::string_view strip_bom(std::string_view s) {
  if (text::starts_with(s, "\xEF\xBB\xBF")) s.remove_prefix(3);
  return s;
}

inline std::string_view first_line(std::string_view input) {
  const auto nl = input.find('\n');
  auto line = input.substr(0, nl);
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  return strip_bom(line);
}

inline std::optional<int> standalone_year(std::string_view seg) {
  if (seg.size() != 4 || !text::is_digits(seg)) return std::nullopt;
  const int y = (seg[0] - '0') * 1000 + (seg[1] - '0') * 100 + (seg[2] - '0') * 10 + (seg[3] - '0');
  if (y < kMinParsedYear || y > kMaxParsedYear) return std::nullopt;
  return y;
}

inline std::string rtrimmed(std::string_view s) {
  while (!s.empty() && text::is_ascii_space(s.back())) s.remove_suffix(1);
  return std::string(s);
}

}  // namespace detail

/// Identifies the export flavour from the first line of the input.
inline ExportFormat detect_format(std::string_view input) {
  if (input.empty()) throw FormatError("empty input");
  const auto line = detail::first_line(input);
  if (text::starts_with(line, "FN")) return ExportFormat::tagged;
  if (line.find('\t') != std::string_view::npos) {
    bool has_py = false;
    bool has_cr = false;
    for (auto cell : text::split(line, "\t")) {
      cell = text::trim(cell);
      has_py = has_py || cell == "PY";
      has_cr = has_cr || cell == "CR";
    }
    if (has_py && has_cr) return ExportFormat::tab_delimited;
  }
  throw FormatError("unrecognized export format, first line: \"" + std::string(line.substr(0, 40)) + "\"");
}

/// Splits a cited-reference string on ", " into author, year, source,
/// volume (V...), page (P...) and DOI. Never fails on non-empty input;
/// anything it cannot place is ignored and `raw` keeps the full line.
inline CitedReference parse_cited_reference(std::string_view cr_line) {
  if (cr_line.empty()) throw std::invalid_argument("cited reference line is empty");

  CitedReference cr;
  cr.raw = std::string(cr_line);

  std::vector<std::string_view> segs;
  for (auto s : text::split(cr_line, ", ")) segs.push_back(text::trim(s));

  std::size_t year_at = segs.size();
  for (std::size_t i = 0; i < segs.size(); ++i) {
    if (auto y = detail::standalone_year(segs[i])) {
      cr.year = *y;
      year_at = i;
      break;
    }
  }

  // Segment one is the author unless it is the year itself (anonymous works).
  if (year_at != 0 && !segs.empty()) {
    auto author = normalize_author(segs[0]);
    if (!text::trim(segs[0]).empty() && author != kUnknownAuthor) cr.first_author = std::move(author);
  }

  std::size_t rest_from = 1;
  if (cr.year) {
    rest_from = year_at + 1;
    if (rest_from < segs.size() && !segs[rest_from].empty()) cr.source = std::string(segs[rest_from]);
    ++rest_from;
  }

  for (std::size_t i = rest_from; i < segs.size(); ++i) {
    const auto seg = segs[i];
    if (!cr.volume && seg.size() >= 2 && seg[0] == 'V' && seg[1] >= '0' && seg[1] <= '9') {
      cr.volume = std::string(seg.substr(1));
    } else if (!cr.page && seg.size() >= 2 && seg[0] == 'P' && text::is_ascii_alnum(seg[1]) &&
               seg.find(' ') == std::string_view::npos) {
      cr.page = std::string(seg.substr(1));
    } else if (!cr.doi && text::starts_with(seg, "DOI ") && !text::trim(seg.substr(4)).empty()) {
      auto doi = text::trim(seg.substr(4));
      // "DOI [10.x/a, 10.x/b]" lists alternatives; keep the first one
      if (doi.front() == '[') {
        doi.remove_prefix(1);
        if (auto close = doi.find(']'); close != std::string_view::npos) {
          doi = doi.substr(0, close);
        } else {
          while (i + 1 < segs.size() && segs[++i].find(']') == std::string_view::npos) {
          }
        }
        doi = text::trim(doi);
      }
      if (!doi.empty()) cr.doi = std::string(doi);
    }
  }
  return cr;
}

namespace detail {

inline void count_cited_references(const RawRecord& rec, ParseDiagnostics& diag) {
  const auto* crs = rec.find("CR");
  if (crs == nullptr) return;
  for (const auto& line : *crs) {
    ++diag.cr_lines_parsed;
    if (!parse_cited_reference(line).year) ++diag.cr_lines_without_year;
  }
}

class TaggedParser {
 public:
  explicit TaggedParser(ParseMode mode) : mode_(mode) {}

  ParsedExport run(std::string_view input) {
    const auto all = text::lines(input);
    for (std::size_t i = 0; i < all.size(); ++i) {
      const std::size_t ln = i + 1;
      auto raw = i == 0 ? strip_bom(all[i]) : all[i];
      const auto line = text::decode_line(raw);
      step(line, ln);
    }
    if (in_record_) malformed(record_start_, "record has no ER terminator before end of input");
    return std::move(out_);
  }

 private:
  void step(const std::string& line, std::size_t ln) {
    const std::string_view sv(line);
    if (after_ef_) {
      if (!text::trim(sv).empty() && !trailing_reported_) {
        trailing_reported_ = true;
        malformed(ln, "text after EF");
      }
      return;
    }
    if (text::trim(sv).empty()) return;

    if (text::starts_with(sv, "   ")) {
      if (!in_record_ || current_tag_.empty()) {
        stray(ln, "continuation line outside a record");
        return;
      }
      if (!skipping_) record_.add(current_tag_, rtrimmed(sv.substr(3)));
      return;
    }

    if (sv.size() >= 2 && is_field_tag(sv.substr(0, 2)) && (sv.size() == 2 || sv[2] == ' ')) {
      const auto tag = sv.substr(0, 2);
      const auto value = sv.size() > 3 ? rtrimmed(sv.substr(3)) : std::string();
      if (!in_record_) {
        if (tag == "FN" || tag == "VR") return;
        if (tag == "EF") {
          after_ef_ = true;
          return;
        }
        if (tag == "ER") {
          stray(ln, "ER without an open record");
          return;
        }
        open(ln);
      } else if (tag == "EF") {
        const auto start = record_start_;
        close_without_er();
        after_ef_ = true;
        malformed(start, "record has no ER terminator before EF at line " + std::to_string(ln));
        return;
      } else if (tag == "PT" && !record_.empty()) {
        const auto start = record_start_;
        close_without_er();
        malformed(start, "record has no ER terminator before next record at line " + std::to_string(ln));
        open(ln);
      }
      if (tag == "ER") {
        finish();
        return;
      }
      current_tag_ = std::string(tag);
      if (!skipping_) record_.add(tag, value);
      return;
    }

    if (in_record_) {
      if (mode_ == ParseMode::strict) throw ParseError(ln, "unrecognized line in record starting at line " + std::to_string(record_start_));
      if (!skipping_) {
        skipping_ = true;
        skip_reason_ = "unrecognized line " + std::to_string(ln);
      }
      return;
    }
    stray(ln, "unrecognized text outside a record");
  }

  void open(std::size_t ln) {
    in_record_ = true;
    record_start_ = ln;
    record_ = RawRecord{};
    current_tag_.clear();
    skipping_ = false;
    skip_reason_.clear();
  }

  void close_without_er() {
    in_record_ = false;
    skipping_ = false;
    current_tag_.clear();
  }

  void finish() {
    in_record_ = false;
    current_tag_.clear();
    if (skipping_) {
      skipping_ = false;
      malformed(record_start_, skip_reason_);
      return;
    }
    record_.tidy_cited_references();
    count_cited_references(record_, out_.diagnostics);
    out_.records.push_back(std::move(record_));
    ++out_.diagnostics.records_parsed;
  }

  // Consecutive stray lines form one malformed block.
  void stray(std::size_t ln, const std::string& reason) {
    if (ln == last_stray_ + 1 && last_stray_ != 0) {
      last_stray_ = ln;
      if (mode_ == ParseMode::strict) throw ParseError(ln, reason);
      return;
    }
    last_stray_ = ln;
    malformed(ln, reason);
  }

  void malformed(std::size_t ln, const std::string& reason) {
    if (mode_ == ParseMode::strict) throw ParseError(ln, reason);
    out_.diagnostics.malformed_records.push_back({ln, reason});
  }

  ParseMode mode_;
  ParsedExport out_;
  RawRecord record_;
  std::string current_tag_;
  std::string skip_reason_;
  std::size_t record_start_ = 0;
  std::size_t last_stray_ = 0;
  bool in_record_ = false;
  bool skipping_ = false;
  bool after_ef_ = false;
  bool trailing_reported_ = false;
};

inline ParsedExport parse_tab_delimited(std::string_view input, ParseMode mode) {
  ParsedExport out;
  const auto all = text::lines(input);
  if (all.empty()) return out;

  std::vector<std::string> header;
  const auto header_line = text::decode_line(strip_bom(all[0]));
  for (auto cell : text::split(header_line, "\t")) header.emplace_back(text::trim(cell));

  for (std::size_t i = 1; i < all.size(); ++i) {
    const std::size_t ln = i + 1;
    const auto line = text::decode_line(all[i]);
    if (text::trim(line).empty()) continue;
    const auto cells = text::split(line, "\t");

    std::string problem;
    if (cells.size() < header.size()) {
      problem = "row has " + std::to_string(cells.size()) + " cells, header has " + std::to_string(header.size());
    } else {
      for (std::size_t c = header.size(); c < cells.size(); ++c)
        if (!text::trim(cells[c]).empty()) problem = "row has cells beyond the header";
    }
    if (!problem.empty()) {
      if (mode == ParseMode::strict) throw ParseError(ln, problem);
      out.diagnostics.malformed_records.push_back({ln, problem});
      continue;
    }

    RawRecord rec;
    for (std::size_t c = 0; c < header.size(); ++c) {
      if (!is_field_tag(header[c])) continue;
      const auto cell = text::trim(cells[c]);
      if (cell.empty()) continue;
      if (header[c] == "CR") {
        for (auto part : text::split(cell, "; "))
          if (auto p = text::trim(part); !p.empty()) rec.add("CR", std::string(p));
      } else {
        rec.add(header[c], std::string(cell));
      }
    }
    count_cited_references(rec, out.diagnostics);
    out.records.push_back(std::move(rec));
    ++out.diagnostics.records_parsed;
  }
  return out;
}

}  // namespace detail

/// Parses a whole export. In lenient mode malformed record blocks are
/// skipped and listed in the diagnostics; in strict mode the first one
/// raises ParseError.
inline ParsedExport parse_export(std::string_view input, ExportFormat format, ParseMode mode = ParseMode::lenient) {
  if (format == ExportFormat::tagged) return detail::TaggedParser(mode).run(input);
  return detail::parse_tab_delimited(input, mode);
}

/// Writes records back out in the field-tagged format, FN/VR header and EF
/// trailer included.
inline std::string serialize_tagged(const std::vector<RawRecord>& records) {
  std::string out = "FN Clarivate Analytics Web of Science\nVR 1.0\n";
  for (const auto& rec : records) {
    for (const auto& [tag, values] : rec.fields()) {
      for (std::size_t i = 0; i < values.size(); ++i) {
        out += i == 0 ? tag : std::string("  ");
        if (i > 0 || !values[i].empty()) out += ' ';
        out += values[i];
        out += '\n';
      }
    }
    out += "ER\n\n";
  }
  out += "EF\n";
  return out;
}

}  // namespace rpys
