#pragma once

// Text renderings of the analysis results: CSV, JSON, aligned tables and an
// SVG spectrogram. All output is byte-deterministic for a given input.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "rpys/corpus.hpp"
#include "rpys/peak_analysis.hpp"
#include "rpys/spectroscopy.hpp"

namespace rpys::report {

using json = nlohmann::ordered_json;

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// ---------------------------------------------------------------------------
//     Corpus statistics
// ---------------------------------------------------------------------------

inline std::string stats_table(const CorpusStats& stats) {
  const std::string h1 = "Journal", h2 = "Papers", h3 = "Cited references";
  std::size_t w1 = std::max(h1.size(), stats.total.journal.size());
  std::size_t w2 = h2.size(), w3 = h3.size();
  auto widen = [&](const JournalRow& r) {
    w1 = std::max(w1, r.journal.size());
    w2 = std::max(w2, std::to_string(r.papers).size());
    w3 = std::max(w3, std::to_string(r.cited_references).size());
  };
  for (const auto& r : stats.rows) widen(r);
  widen(stats.total);

  std::ostringstream os;
  auto line = [&](const std::string& a, const std::string& b, const std::string& c) {
    os << a << std::string(w1 - a.size(), ' ') << "  " << std::string(w2 - b.size(), ' ') << b << "  "
       << std::string(w3 - c.size(), ' ') << c << '\n';
  };
  line(h1, h2, h3);
  os << std::string(w1 + w2 + w3 + 4, '-') << '\n';
  for (const auto& r : stats.rows) line(r.journal, std::to_string(r.papers), std::to_string(r.cited_references));
  os << std::string(w1 + w2 + w3 + 4, '-') << '\n';
  line(stats.total.journal, std::to_string(stats.total.papers), std::to_string(stats.total.cited_references));
  return os.str();
}

inline std::string stats_csv(const CorpusStats& stats) {
  std::string out = "journal,papers,cited_references\n";
  for (const auto& r : stats.rows)
    out += csv_field(r.journal) + "," + std::to_string(r.papers) + "," + std::to_string(r.cited_references) + "\n";
  out += "Total," + std::to_string(stats.total.papers) + "," + std::to_string(stats.total.cited_references) + "\n";
  return out;
}

// ---------------------------------------------------------------------------
//     Spectrum
// ---------------------------------------------------------------------------

/// rpys.csv: one row per year of the spectrum span.
inline std::string rpys_csv(const Spectrum& s) {
  std::string out = "rpy,n_cr\n";
  for (std::size_t i = 0; i < s.counts.size(); ++i)
    out += std::to_string(s.first_year + static_cast<int>(i)) + "," + std::to_string(s.counts[i]) + "\n";
  return out;
}

/// median.csv: count, five-year median and deviation per year.
inline std::string median_csv(const DeviationSeries& series) {
  std::string out = "rpy,n_cr,median5,deviation\n";
  for (const auto& p : series) {
    out += std::to_string(p.year) + "," + std::to_string(p.n_cr) + "," + p.median5.to_string() + "," +
           p.deviation.to_string() + "\n";
  }
  return out;
}

inline json peaks_json(const std::vector<Peak>& peaks) {
  json arr = json::array();
  for (const auto& p : peaks) {
    json j;
    j["year"] = p.year;
    j["n_cr"] = p.n_cr;
    j["median5"] = p.median5.to_double();
    j["deviation"] = p.deviation.to_double();
    j["rank"] = p.rank;
    arr.push_back(std::move(j));
  }
  return arr;
}

inline std::string peaks_table(const std::vector<Peak>& peaks) {
  std::ostringstream os;
  char buf[96];
  std::snprintf(buf, sizeof buf, "%4s  %4s  %8s  %8s  %9s\n", "rank", "year", "n_cr", "median5", "deviation");
  os << buf;
  for (const auto& p : peaks) {
    std::snprintf(buf, sizeof buf, "%4d  %4d  %8lld  %8s  %9s\n", p.rank, p.year, static_cast<long long>(p.n_cr),
                  p.median5.to_string().c_str(), p.deviation.to_string().c_str());
    os << buf;
  }
  return os.str();
}

// ---------------------------------------------------------------------------
//     Drill-down
// ---------------------------------------------------------------------------

inline json work_rows_json(const std::vector<WorkRow>& rows) {
  json works = json::array();
  for (const auto& w : rows) {
    json j;
    j["key"] = w.key.to_string();
    j["count"] = w.count;
    j["share"] = w.share.percent();
    works.push_back(std::move(j));
  }
  return works;
}

inline json profile_json(const YearProfile& p) {
  json j;
  j["year"] = p.year;
  j["total_refs"] = p.total_refs;
  json authors = json::array();
  for (const auto& a : p.author_rows) {
    json r;
    r["name"] = a.author;
    r["count"] = a.count;
    r["share"] = a.share.percent();
    authors.push_back(std::move(r));
  }
  j["authors"] = std::move(authors);
  j["works"] = work_rows_json(p.work_rows);
  j["unattributed"] = p.unattributed;
  j["share_denominator"] = "total_refs";
  return j;
}

inline json breakdown_json(const AuthorWorkBreakdown& b) {
  json j;
  j["author"] = b.author;
  j["year"] = b.year;
  j["author_total"] = b.author_total;
  j["works"] = work_rows_json(b.rows);
  return j;
}

inline std::string profile_table(const YearProfile& p) {
  std::ostringstream os;
  os << "RPY " << p.year << ": " << p.total_refs << " cited references (" << p.unattributed
     << " unattributed; shares are of all " << p.total_refs << ")\n";
  os << "\nTop authors\n";
  for (const auto& a : p.author_rows) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%8lld  %6s%%  ", static_cast<long long>(a.count), a.share.to_string().c_str());
    os << buf << a.author << '\n';
  }
  os << "\nTop works\n";
  for (const auto& w : p.work_rows) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%8lld  %6s%%  ", static_cast<long long>(w.count), w.share.to_string().c_str());
    os << buf << w.key.to_string() << '\n';
  }
  return os.str();
}

inline std::string breakdown_table(const AuthorWorkBreakdown& b) {
  std::ostringstream os;
  os << b.author << ", " << b.year << ": " << b.author_total << " cited references\n";
  for (const auto& w : b.rows) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%8lld  %6s%%  ", static_cast<long long>(w.count), w.share.to_string().c_str());
    os << buf << w.key.to_string() << '\n';
  }
  return os.str();
}

// ---------------------------------------------------------------------------
//     Spectrogram
// ---------------------------------------------------------------------------

namespace detail {

inline std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  std::string s = buf;
  if (s == "-0.00") s = "0.00";
  return s;
}

/// 1, 2, 5, 10, 20, 50, ... : the smallest step giving at most `max_ticks`.
inline long long nice_step(double span, int max_ticks) {
  long long step = 1;
  for (int i = 0;; ++i) {
    for (int m : {1, 2, 5}) {
      step = m;
      for (int k = 0; k < i; ++k) step *= 10;
      if (span / static_cast<double>(step) <= max_ticks) return step;
    }
  }
}

}  // namespace detail

/// Two polylines over the year axis, counts N(y) and deviation d(y), with
/// the given peaks labelled. An empty series yields the frame only.
inline std::string spectrogram_svg(const DeviationSeries& series, const std::vector<Peak>& peaks) {
  constexpr double W = 960, H = 480, L = 70, R = 20, T = 40, B = 60;
  const double pw = W - L - R, ph = H - T - B;
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"960\" height=\"480\" viewBox=\"0 0 960 480\" "
        "font-family=\"sans-serif\" font-size=\"11\">\n";
  os << "<rect x=\"0\" y=\"0\" width=\"960\" height=\"480\" fill=\"white\"/>\n";
  os << "<text x=\"" << detail::num(W / 2) << "\" y=\"20\" text-anchor=\"middle\" font-size=\"14\">"
     << "Reference publication year spectrogram</text>\n";

  double y_lo = 0, y_hi = 1;
  int x_lo = 0, x_hi = 1;
  if (!series.empty()) {
    x_lo = series.front().year;
    x_hi = series.back().year;
    for (const auto& p : series) {
      y_hi = std::max({y_hi, static_cast<double>(p.n_cr), p.deviation.to_double()});
      y_lo = std::min(y_lo, p.deviation.to_double());
    }
  }
  const double x_span = x_hi > x_lo ? x_hi - x_lo : 1;
  auto sx = [&](double year) { return series.size() == 1 ? L + pw / 2 : L + (year - x_lo) / x_span * pw; };
  auto sy = [&](double v) { return T + (y_hi - v) / (y_hi - y_lo) * ph; };

  os << "<g class=\"axes\" stroke=\"black\" stroke-width=\"1\">\n";
  os << "<line x1=\"" << detail::num(L) << "\" y1=\"" << detail::num(T + ph) << "\" x2=\"" << detail::num(L + pw)
     << "\" y2=\"" << detail::num(T + ph) << "\"/>\n";
  os << "<line x1=\"" << detail::num(L) << "\" y1=\"" << detail::num(T) << "\" x2=\"" << detail::num(L)
     << "\" y2=\"" << detail::num(T + ph) << "\"/>\n";
  if (!series.empty() && y_lo < 0) {
    os << "<line x1=\"" << detail::num(L) << "\" y1=\"" << detail::num(sy(0)) << "\" x2=\"" << detail::num(L + pw)
       << "\" y2=\"" << detail::num(sy(0)) << "\" stroke-dasharray=\"3,3\"/>\n";
  }
  os << "</g>\n";

  os << "<g class=\"ticks\" text-anchor=\"middle\">\n";
  if (!series.empty()) {
    const auto step = detail::nice_step(x_span, 12);
    const long long first = (static_cast<long long>(x_lo) + step - 1) / step * step;
    for (long long y = first; y <= x_hi; y += step) {
      os << "<text x=\"" << detail::num(sx(static_cast<double>(y))) << "\" y=\"" << detail::num(T + ph + 16) << "\">"
         << y << "</text>\n";
    }
    const auto vstep = detail::nice_step(y_hi - y_lo, 8);
    const auto vfirst = static_cast<long long>(std::ceil(y_lo / static_cast<double>(vstep))) * vstep;
    for (long long v = vfirst; static_cast<double>(v) <= y_hi; v += vstep) {
      os << "<text x=\"" << detail::num(L - 6) << "\" y=\"" << detail::num(sy(static_cast<double>(v)) + 4)
         << "\" text-anchor=\"end\">" << v << "</text>\n";
    }
  }
  os << "</g>\n";
  os << "<text x=\"" << detail::num(L + pw / 2) << "\" y=\"" << detail::num(H - 18)
     << "\" text-anchor=\"middle\">Referenced publication year</text>\n";

  if (!series.empty()) {
    auto polyline = [&](const char* cls, const char* colour, auto value) {
      os << "<polyline class=\"" << cls << "\" fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
      for (std::size_t i = 0; i < series.size(); ++i) {
        if (i) os << ' ';
        os << detail::num(sx(series[i].year)) << ',' << detail::num(sy(value(series[i])));
      }
      os << "\"/>\n";
    };
    polyline("n-cr", "#1f4e9e", [](const DeviationPoint& p) { return static_cast<double>(p.n_cr); });
    polyline("deviation", "#c0392b", [](const DeviationPoint& p) { return p.deviation.to_double(); });

    std::vector<Peak> by_year = peaks;
    std::sort(by_year.begin(), by_year.end(), [](const Peak& a, const Peak& b) { return a.year < b.year; });
    for (const auto& pk : by_year) {
      os << "<text class=\"peak-label\" x=\"" << detail::num(sx(pk.year)) << "\" y=\""
         << detail::num(sy(pk.deviation.to_double()) - 6) << "\" text-anchor=\"middle\" fill=\"#c0392b\">" << pk.year
         << "</text>\n";
    }

    os << "<g class=\"legend\">\n";
    os << "<text x=\"" << detail::num(L + pw - 4) << "\" y=\"" << detail::num(T + 12)
       << "\" text-anchor=\"end\" fill=\"#1f4e9e\">Number of cited references</text>\n";
    os << "<text x=\"" << detail::num(L + pw - 4) << "\" y=\"" << detail::num(T + 26)
       << "\" text-anchor=\"end\" fill=\"#c0392b\">Deviation from the 5-year median</text>\n";
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace rpys::report
