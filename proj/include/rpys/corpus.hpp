#pragma once

// Citing-record corpus: uid deduplication, journal filtering, work identity
// for cited references, and per-journal paper/reference statistics.

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <unordered_set>
#include <vector>

#include "rpys/normalize.hpp"
#include "rpys/text.hpp"
#include "rpys/wos_parser.hpp"

namespace rpys {

/// Identity of a cited work. Built only for references that carry a year;
/// DOI does not take part.
struct RefKey {
  std::string first_author;
  int year = 0;
  std::string source;
  std::string volume;
  std::string page;

  friend auto operator<=>(const RefKey&, const RefKey&) = default;
  friend bool operator==(const RefKey&, const RefKey&) = default;

  /// "EINSTEIN A, 1905, ANN PHYS-BERLIN, V17, P891"; empty parts omitted.
  std::string to_string() const {
    std::string out = first_author + ", " + std::to_string(year);
    if (!source.empty()) out += ", " + source;
    if (!volume.empty()) out += ", V" + volume;
    if (!page.empty()) out += ", P" + page;
    return out;
  }
};

inline std::optional<RefKey> reference_key(const CitedReference& cr) {
  if (!cr.year) return std::nullopt;
  RefKey key;
  key.first_author = cr.first_author ? normalize_field(*cr.first_author) : std::string(kUnknownAuthor);
  if (key.first_author.empty()) key.first_author = std::string(kUnknownAuthor);
  key.year = *cr.year;
  if (cr.source) key.source = normalize_field(*cr.source);
  if (cr.volume) key.volume = normalize_field(*cr.volume);
  if (cr.page) key.page = normalize_field(*cr.page);
  return key;
}

/// Grouping token for drill-downs: the normalized first author or UNKNOWN.
inline std::string author_token(const CitedReference& cr) {
  return cr.first_author ? normalize_author(*cr.first_author) : std::string(kUnknownAuthor);
}

struct Record {
  std::string uid;
  std::string journal;
  int pub_year = 0;
  std::string doc_type;
  std::vector<CitedReference> cited_refs;
};

struct CorpusDiagnostics {
  std::size_t records_seen = 0;
  std::size_t duplicates_dropped = 0;
  std::size_t filtered_out = 0;
  std::size_t missing_required_fields = 0;
  std::size_t cr_lines = 0;
  std::size_t cr_lines_without_year = 0;
};

class MissingFieldError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Deduplicated citing records, kept sorted by uid.
class Corpus {
 public:
  Corpus() = default;

  /// Inserts unless the uid is already present. Returns false on a duplicate.
  bool insert(Record rec) {
    auto pos = std::lower_bound(records_.begin(), records_.end(), rec.uid,
                                [](const Record& r, const std::string& uid) { return r.uid < uid; });
    if (pos != records_.end() && pos->uid == rec.uid) return false;
    records_.insert(pos, std::move(rec));
    return true;
  }

  const std::vector<Record>& records() const noexcept { return records_; }
  bool empty() const noexcept { return records_.empty(); }
  std::size_t size() const noexcept { return records_.size(); }

  std::size_t cited_reference_count() const {
    std::size_t n = 0;
    for (const auto& r : records_) n += r.cited_refs.size();
    return n;
  }

  std::optional<int> max_pub_year() const {
    std::optional<int> best;
    for (const auto& r : records_)
      if (!best || r.pub_year > *best) best = r.pub_year;
    return best;
  }

  /// Calls fn(const CitedReference&) for every reference of every record.
  template <typename Fn>
  void for_each_reference(Fn&& fn) const {
    for (const auto& r : records_)
      for (const auto& cr : r.cited_refs) fn(cr);
  }

 private:
  std::vector<Record> records_;
};

/// Records already in `into` win over those in `from`.
inline Corpus merge(Corpus into, const Corpus& from) {
  for (const auto& r : from.records()) into.insert(r);
  return into;
}

namespace detail {

inline std::optional<int> parse_pub_year(const std::optional<std::string>& py) {
  if (!py) return std::nullopt;
  const auto t = text::trim(*py);
  if (t.empty() || t.size() > 4 || !text::is_digits(t)) return std::nullopt;
  return std::stoi(std::string(t));
}

inline std::string surrogate_uid(const std::string& journal, int pub_year, const RawRecord& rec) {
  auto h = text::fnv1a(journal);
  h = text::fnv1a("\x1f" + std::to_string(pub_year), h);
  h = text::fnv1a("\x1f" + rec.first("AU").value_or(""), h);
  h = text::fnv1a("\x1f" + rec.joined("TI").value_or(""), h);
  char buf[32];
  std::snprintf(buf, sizeof buf, "SURROGATE:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace detail

struct CorpusBuild {
  Corpus corpus;
  CorpusDiagnostics diagnostics;
};

/// Converts raw records into a corpus. The first record seen for a uid wins.
/// `journal_filter` entries are compared after normalize_field on both sides.
/// Records without PY or SO raise MissingFieldError in strict mode and are
/// skipped (and counted) otherwise.
inline CorpusBuild build_corpus(const std::vector<RawRecord>& records,
                                const std::optional<std::set<std::string>>& journal_filter = std::nullopt,
                                ParseMode mode = ParseMode::lenient) {
  CorpusBuild out;
  std::optional<std::set<std::string>> wanted;
  if (journal_filter) {
    wanted.emplace();
    for (const auto& j : *journal_filter) wanted->insert(normalize_field(j));
  }

  for (const auto& raw : records) {
    ++out.diagnostics.records_seen;
    const auto so = raw.joined("SO");
    const auto py = detail::parse_pub_year(raw.first("PY"));
    if (!so || normalize_field(*so).empty() || !py) {
      if (mode == ParseMode::strict) {
        throw MissingFieldError("record " + raw.first("UT").value_or("<no UT>") + " lacks " +
                                (!py ? "a valid PY" : "SO"));
      }
      ++out.diagnostics.missing_required_fields;
      continue;
    }
    Record rec;
    rec.journal = normalize_field(*so);
    if (wanted && !wanted->contains(rec.journal)) {
      ++out.diagnostics.filtered_out;
      continue;
    }
    rec.pub_year = *py;
    rec.doc_type = raw.joined("DT").value_or("");
    const auto ut = raw.first("UT");
    rec.uid = ut && !text::trim(*ut).empty() ? std::string(text::trim(*ut))
                                             : detail::surrogate_uid(rec.journal, rec.pub_year, raw);
    if (const auto* crs = raw.find("CR")) {
      for (const auto& line : *crs) {
        if (text::trim(line).empty()) continue;
        rec.cited_refs.push_back(parse_cited_reference(line));
      }
    }
    const auto n_refs = rec.cited_refs.size();
    std::size_t n_yearless = 0;
    for (const auto& cr : rec.cited_refs)
      if (!cr.year) ++n_yearless;
    if (!out.corpus.insert(std::move(rec))) {
      ++out.diagnostics.duplicates_dropped;
      continue;
    }
    out.diagnostics.cr_lines += n_refs;
    out.diagnostics.cr_lines_without_year += n_yearless;
  }
  return out;
}

struct JournalRow {
  std::string journal;
  std::size_t papers = 0;
  std::size_t cited_references = 0;

  friend bool operator==(const JournalRow&, const JournalRow&) = default;
};

struct CorpusStats {
  std::vector<JournalRow> rows;  // sorted by journal
  JournalRow total{"Total", 0, 0};
};

inline CorpusStats corpus_stats(const Corpus& corpus) {
  std::map<std::string, JournalRow> by_journal;
  for (const auto& r : corpus.records()) {
    auto& row = by_journal[r.journal];
    row.journal = r.journal;
    ++row.papers;
    row.cited_references += r.cited_refs.size();
  }
  CorpusStats stats;
  for (auto& [_, row] : by_journal) {
    stats.total.papers += row.papers;
    stats.total.cited_references += row.cited_references;
    stats.rows.push_back(std::move(row));
  }
  return stats;
}

}  // namespace rpys
