#pragma once

// Drill-down for one referenced publication year: which first authors and
// which works account for its citations, as percentage shares.

#include <algorithm>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "rpys/corpus.hpp"
#include "rpys/spectroscopy.hpp"

namespace rpys {

/// count / total as a percentage, rounded once to one decimal, half away
/// from zero. Kept as an integer number of tenths.
class Share {
 public:
  constexpr Share() = default;
  constexpr Share(std::int64_t count, std::int64_t total) : tenths_(round_tenths(count, total)) {}

  constexpr std::int64_t tenths() const { return tenths_; }
  constexpr double percent() const { return static_cast<double>(tenths_) / 10.0; }

  /// "24.0", "54.2"
  std::string to_string() const {
    return std::to_string(tenths_ / 10) + "." + std::to_string(tenths_ % 10);
  }

  friend constexpr auto operator<=>(Share, Share) = default;

 private:
  static constexpr std::int64_t round_tenths(std::int64_t count, std::int64_t total) {
    if (total <= 0 || count <= 0) return 0;
    // 1000 * count / total, rounded half up (all operands non-negative)
    return (2000 * count + total) / (2 * total);
  }
  std::int64_t tenths_ = 0;
};

struct AuthorRow {
  std::string author;
  std::int64_t count = 0;
  Share share;
};

struct WorkRow {
  RefKey key;
  std::int64_t count = 0;
  Share share;
};

struct YearProfile {
  int year = 0;
  std::int64_t total_refs = 0;
  std::vector<AuthorRow> author_rows;  // UNKNOWN excluded, see `unattributed`
  std::vector<WorkRow> work_rows;
  std::int64_t unattributed = 0;
};

struct AuthorWorkBreakdown {
  std::string author;
  int year = 0;
  std::int64_t author_total = 0;
  std::vector<WorkRow> rows;  // shares relative to author_total
};

namespace detail {

template <typename Row, typename Name>
void sort_and_truncate(std::vector<Row>& rows, Name name, std::size_t top_k) {
  std::sort(rows.begin(), rows.end(), [&](const Row& a, const Row& b) {
    if (a.count != b.count) return a.count > b.count;
    return name(a) < name(b);
  });
  if (rows.size() > top_k) rows.resize(top_k);
}

inline std::vector<WorkRow> work_rows(const std::map<RefKey, std::int64_t>& counts, std::int64_t denom,
                                      std::size_t top_k) {
  std::vector<WorkRow> rows;
  rows.reserve(counts.size());
  for (const auto& [key, n] : counts) rows.push_back({key, n, Share(n, denom)});
  sort_and_truncate(rows, [](const WorkRow& r) -> const RefKey& { return r.key; }, top_k);
  return rows;
}

}  // namespace detail

/// Profile of year `year`. The share denominator is every reference with
/// that year, unattributed (UNKNOWN-author) ones included. Rows are sorted
/// by count descending, ties by name/key, and cut to `top_k`.
inline YearProfile drill_year(const Corpus& corpus, int year, std::size_t top_k) {
  if (top_k < 1) throw std::invalid_argument("top_k must be >= 1");
  YearProfile p;
  p.year = year;
  std::map<std::string, std::int64_t> by_author;
  std::map<RefKey, std::int64_t> by_work;
  corpus.for_each_reference([&](const CitedReference& cr) {
    if (cr.year != year) return;
    ++p.total_refs;
    auto author = author_token(cr);
    if (author == kUnknownAuthor)
      ++p.unattributed;
    else
      ++by_author[std::move(author)];
    if (auto key = reference_key(cr)) ++by_work[std::move(*key)];
  });
  for (const auto& [name, n] : by_author) p.author_rows.push_back({name, n, Share(n, p.total_refs)});
  detail::sort_and_truncate(p.author_rows, [](const AuthorRow& r) -> const std::string& { return r.author; }, top_k);
  p.work_rows = detail::work_rows(by_work, p.total_refs, top_k);
  return p;
}

/// Works of one (already normalized) author in one year, with shares of
/// that author's references. Not truncated.
inline AuthorWorkBreakdown author_breakdown(const Corpus& corpus, std::string_view author, int year) {
  AuthorWorkBreakdown b;
  b.author = std::string(author);
  b.year = year;
  std::map<RefKey, std::int64_t> by_work;
  corpus.for_each_reference([&](const CitedReference& cr) {
    if (cr.year != year || author_token(cr) != author) return;
    ++b.author_total;
    if (auto key = reference_key(cr)) ++by_work[std::move(*key)];
  });
  b.rows = detail::work_rows(by_work, b.author_total, by_work.size());
  return b;
}

/// One profile per peak, ascending by year whatever the peak ranks are.
inline std::vector<YearProfile> profile_all_peaks(const Corpus& corpus, const std::vector<Peak>& peaks,
                                                  std::size_t top_k) {
  std::vector<int> years;
  for (const auto& pk : peaks) years.push_back(pk.year);
  std::sort(years.begin(), years.end());
  years.erase(std::unique(years.begin(), years.end()), years.end());
  std::vector<YearProfile> out;
  out.reserve(years.size());
  for (int y : years) out.push_back(drill_year(corpus, y, top_k));
  return out;
}

}  // namespace rpys
