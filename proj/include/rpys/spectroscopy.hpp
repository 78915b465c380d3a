#pragma once

// Reference publication year spectrum: counts of cited references per
// referenced publication year, their deviation from the five-year median,
// and local-maximum peaks of that deviation.

#include <algorithm>
#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "rpys/corpus.hpp"

namespace rpys {

/// Exact value with half-integer resolution, stored as a count of halves.
/// Medians of an even number of counts land on .5 at most.
class HalfValue {
 public:
  constexpr HalfValue() = default;
  static constexpr HalfValue from_halves(std::int64_t halves) { return HalfValue(halves); }
  static constexpr HalfValue from_int(std::int64_t v) { return HalfValue(2 * v); }

  constexpr std::int64_t halves() const { return halves_; }
  constexpr double to_double() const { return static_cast<double>(halves_) / 2.0; }
  constexpr bool is_integral() const { return halves_ % 2 == 0; }

  friend constexpr HalfValue operator+(HalfValue a, HalfValue b) { return HalfValue(a.halves_ + b.halves_); }
  friend constexpr HalfValue operator-(HalfValue a, HalfValue b) { return HalfValue(a.halves_ - b.halves_); }
  friend constexpr HalfValue operator*(HalfValue a, std::int64_t k) { return HalfValue(a.halves_ * k); }
  friend constexpr auto operator<=>(HalfValue, HalfValue) = default;

  /// One decimal: "8.0", "-1.5", "-0.5".
  std::string to_string() const {
    const auto mag = halves_ < 0 ? -halves_ : halves_;
    std::string out = halves_ < 0 ? "-" : "";
    out += std::to_string(mag / 2);
    out += mag % 2 ? ".5" : ".0";
    return out;
  }

 private:
  constexpr explicit HalfValue(std::int64_t h) : halves_(h) {}
  std::int64_t halves_ = 0;
};

struct YearRange {
  int lo = 0;
  int hi = 0;
  bool contains(int y) const { return lo <= y && y <= hi; }
};

/// Dense per-year counts. `counts[i]` belongs to year `first_year + i`.
struct Spectrum {
  int first_year = 0;
  std::vector<std::int64_t> counts;
  std::int64_t dropped_out_of_range = 0;

  bool empty() const noexcept { return counts.empty(); }
  int last_year() const { return first_year + static_cast<int>(counts.size()) - 1; }
  std::int64_t total() const {
    std::int64_t t = 0;
    for (auto c : counts) t += c;
    return t;
  }
  std::int64_t at(int year) const {
    if (empty() || year < first_year || year > last_year()) return 0;
    return counts[static_cast<std::size_t>(year - first_year)];
  }
};

/// Builds a spectrum from an iterable of optional years (references without
/// a year are skipped). Without `pin`, the year span is trimmed to the first
/// and last non-zero year; with `pin`, it is exactly `valid`.
template <typename YearRangeT>
Spectrum spectrum_from_years(const YearRangeT& years, YearRange valid, bool pin = false) {
  if (valid.lo > valid.hi) throw std::invalid_argument("valid year range is empty");
  std::vector<std::int64_t> dense(static_cast<std::size_t>(valid.hi - valid.lo) + 1, 0);
  Spectrum s;
  for (const std::optional<int>& y : years) {
    if (!y) continue;
    if (!valid.contains(*y)) {
      ++s.dropped_out_of_range;
      continue;
    }
    ++dense[static_cast<std::size_t>(*y - valid.lo)];
  }
  std::size_t from = 0;
  std::size_t to = dense.size();
  if (!pin) {
    while (from < to && dense[from] == 0) ++from;
    while (to > from && dense[to - 1] == 0) --to;
  }
  s.first_year = valid.lo + static_cast<int>(from);
  s.counts.assign(dense.begin() + static_cast<std::ptrdiff_t>(from), dense.begin() + static_cast<std::ptrdiff_t>(to));
  return s;
}

inline Spectrum compute_spectrum(const Corpus& corpus, YearRange valid, bool pin = false) {
  std::vector<std::optional<int>> years;
  years.reserve(corpus.cited_reference_count());
  corpus.for_each_reference([&](const CitedReference& cr) { years.push_back(cr.year); });
  return spectrum_from_years(years, valid, pin);
}

/// [1500, latest citing publication year]; [1500, 1500] for an empty corpus.
inline YearRange default_valid_range(const Corpus& corpus) {
  constexpr int kEarliest = 1500;
  return {kEarliest, std::max(kEarliest, corpus.max_pub_year().value_or(kEarliest))};
}

struct DeviationPoint {
  int year = 0;
  std::int64_t n_cr = 0;
  HalfValue median5;
  HalfValue deviation;
};

using DeviationSeries = std::vector<DeviationPoint>;

/// Median of the window {y-2..y+2} clipped to the spectrum's span (three
/// values at either end, four next to them); deviation = count - median.
inline DeviationSeries median_deviation(const Spectrum& spectrum) {
  DeviationSeries out;
  const auto& c = spectrum.counts;
  const auto n = static_cast<std::ptrdiff_t>(c.size());
  out.reserve(c.size());
  std::array<std::int64_t, 5> window{};
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    const auto lo = std::max<std::ptrdiff_t>(0, i - 2);
    const auto hi = std::min<std::ptrdiff_t>(n - 1, i + 2);
    std::size_t m = 0;
    for (auto j = lo; j <= hi; ++j) window[m++] = c[static_cast<std::size_t>(j)];
    std::sort(window.begin(), window.begin() + static_cast<std::ptrdiff_t>(m));
    const auto med = m % 2 ? HalfValue::from_int(window[m / 2])
                           : HalfValue::from_halves(window[m / 2 - 1] + window[m / 2]);
    const auto count = HalfValue::from_int(c[static_cast<std::size_t>(i)]);
    out.push_back({spectrum.first_year + static_cast<int>(i), c[static_cast<std::size_t>(i)], med, count - med});
  }
  return out;
}

struct Peak {
  int year = 0;
  HalfValue deviation;
  std::int64_t n_cr = 0;
  HalfValue median5;
  int rank = 0;  // 1 = largest deviation

  friend bool operator==(const Peak&, const Peak&) = default;
};

/// True when the point at `i` exceeds `min_deviation`, is strictly above its
/// left neighbour and not below its right one. Missing neighbours count as
/// minus infinity, so on a plateau the leftmost year wins.
inline bool is_peak_at(const DeviationSeries& series, std::size_t i, double min_deviation) {
  const auto d = series[i].deviation;
  if (!(d.to_double() > min_deviation)) return false;
  if (i > 0 && !(d > series[i - 1].deviation)) return false;
  if (i + 1 < series.size() && !(d >= series[i + 1].deviation)) return false;
  return true;
}

/// Peaks ordered by deviation (descending) then year (ascending), ranked
/// from 1, optionally truncated to `top_k`.
inline std::vector<Peak> detect_peaks(const DeviationSeries& series, double min_deviation = 0.0,
                                      std::optional<std::size_t> top_k = std::nullopt) {
  if (min_deviation < 0) throw std::invalid_argument("min_deviation must be >= 0");
  std::vector<Peak> peaks;
  for (std::size_t i = 0; i < series.size(); ++i) {
    if (!is_peak_at(series, i, min_deviation)) continue;
    peaks.push_back({series[i].year, series[i].deviation, series[i].n_cr, series[i].median5, 0});
  }
  std::sort(peaks.begin(), peaks.end(), [](const Peak& a, const Peak& b) {
    if (a.deviation != b.deviation) return a.deviation > b.deviation;
    return a.year < b.year;
  });
  if (top_k && peaks.size() > *top_k) peaks.resize(*top_k);
  for (std::size_t r = 0; r < peaks.size(); ++r) peaks[r].rank = static_cast<int>(r) + 1;
  return peaks;
}

}  // namespace rpys
