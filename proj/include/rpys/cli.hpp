#pragma once

// Subcommand implementations behind the `rpys` tool. Each command takes a
// RunConfig plus the streams for the printed report and for diagnostics,
// writes its artifacts into the output directory and returns the exit code.

#include <glob.h>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "rpys/corpus.hpp"
#include "rpys/peak_analysis.hpp"
#include "rpys/report.hpp"
#include "rpys/spectroscopy.hpp"
#include "rpys/wos_parser.hpp"

namespace rpys::cli {

enum ExitCode : int { kOk = 0, kEmptyResult = 1, kUsageOrIo = 2 };

enum class FormatChoice { automatic, tagged, tsv };

struct RunConfig {
  std::vector<std::string> inputs;
  FormatChoice format = FormatChoice::automatic;
  std::optional<std::set<std::string>> journals;
  std::optional<YearRange> range;  // pins the spectrum span when set
  double min_deviation = 0.0;
  std::optional<std::size_t> top_k;
  std::filesystem::path out_dir = ".";
  bool out_dir_given = false;
  bool strict = false;

  ParseMode mode() const { return strict ? ParseMode::strict : ParseMode::lenient; }
};

/// Failure that maps to exit code 2.
class CliError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultDrillTop = 10;

inline bool has_glob_chars(const std::string& s) { return s.find_first_of("*?[") != std::string::npos; }

/// Expands glob patterns; plain paths are passed through untouched.
inline std::vector<std::string> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<std::string> out;
  for (const auto& in : inputs) {
    if (!has_glob_chars(in)) {
      out.push_back(in);
      continue;
    }
    glob_t g{};
    const int rc = ::glob(in.c_str(), 0, nullptr, &g);
    if (rc == 0) {
      for (std::size_t i = 0; i < g.gl_pathc; ++i) out.emplace_back(g.gl_pathv[i]);
    }
    ::globfree(&g);
    if (rc != 0) throw CliError("no input files match '" + in + "'");
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw CliError("error reading input file '" + path + "'");
  return ss.str();
}

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw CliError("cannot write output file '" + path.string() + "'");
  out << content;
  out.close();
  if (!out) throw CliError("error writing output file '" + path.string() + "'");
}

inline void ensure_out_dir(const RunConfig& cfg) {
  std::error_code ec;
  std::filesystem::create_directories(cfg.out_dir, ec);
  if (ec || !std::filesystem::is_directory(cfg.out_dir))
    throw CliError("cannot create output directory '" + cfg.out_dir.string() + "'");
}

/// Reads, parses and merges every input into one corpus. Lenient-mode
/// diagnostics go to `err`.
inline CorpusBuild load_corpus(const RunConfig& cfg, std::ostream& err) {
  if (cfg.inputs.empty()) throw CliError("at least one --input is required");
  std::vector<RawRecord> all;
  for (const auto& path : expand_inputs(cfg.inputs)) {
    const auto content = read_file(path);
    ExportFormat fmt{};
    try {
      switch (cfg.format) {
        case FormatChoice::tagged: fmt = ExportFormat::tagged; break;
        case FormatChoice::tsv: fmt = ExportFormat::tab_delimited; break;
        case FormatChoice::automatic: fmt = detect_format(content); break;
      }
      auto parsed = parse_export(content, fmt, cfg.mode());
      const auto& d = parsed.diagnostics;
      err << path << ": " << d.records_parsed << " records, " << d.cr_lines_parsed << " cited references ("
          << d.cr_lines_without_year << " without year), " << d.malformed_records.size() << " malformed\n";
      for (const auto& m : d.malformed_records) err << path << ":" << m.line << ": skipped: " << m.reason << '\n';
      for (auto& r : parsed.records) all.push_back(std::move(r));
    } catch (const FormatError& e) {
      throw CliError(path + ": " + e.what());
    } catch (const ParseError& e) {
      throw CliError(path + ":" + std::to_string(e.line()) + ": " + e.what());
    }
  }
  try {
    auto built = build_corpus(all, cfg.journals, cfg.mode());
    const auto& d = built.diagnostics;
    if (d.duplicates_dropped || d.missing_required_fields || d.filtered_out) {
      err << "corpus: " << d.duplicates_dropped << " duplicate records dropped, " << d.missing_required_fields
          << " lacking PY/SO excluded, " << d.filtered_out << " outside the journal filter\n";
    }
    return built;
  } catch (const MissingFieldError& e) {
    throw CliError(e.what());
  }
}

struct Analysis {
  CorpusBuild build;
  Spectrum spectrum;
  DeviationSeries series;
  std::vector<Peak> peaks;
};

inline Analysis analyse(const RunConfig& cfg, std::ostream& err) {
  Analysis a;
  a.build = load_corpus(cfg, err);
  const auto range = cfg.range.value_or(default_valid_range(a.build.corpus));
  a.spectrum = compute_spectrum(a.build.corpus, range, cfg.range.has_value());
  a.series = median_deviation(a.spectrum);
  a.peaks = detect_peaks(a.series, cfg.min_deviation, cfg.top_k);
  if (a.spectrum.dropped_out_of_range)
    err << "spectrum: " << a.spectrum.dropped_out_of_range << " references outside [" << range.lo << ", " << range.hi
        << "] dropped\n";
  return a;
}

template <typename Fn>
int guarded(std::ostream& err, Fn&& fn) {
  try {
    return fn();
  } catch (const CliError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsageOrIo;
  }
}

inline int cmd_stats(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto built = load_corpus(cfg, err);
    const auto stats = corpus_stats(built.corpus);
    out << report::stats_table(stats);
    if (cfg.out_dir_given) {
      ensure_out_dir(cfg);
      write_file(cfg.out_dir / "stats.csv", report::stats_csv(stats));
    }
    return built.corpus.empty() ? kEmptyResult : kOk;
  });
}

inline int cmd_spectrum(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto a = analyse(cfg, err);
    ensure_out_dir(cfg);
    write_file(cfg.out_dir / "rpys.csv", report::rpys_csv(a.spectrum));
    write_file(cfg.out_dir / "median.csv", report::median_csv(a.series));
    out << "wrote " << a.series.size() << " years to " << (cfg.out_dir / "rpys.csv").string() << " and "
        << (cfg.out_dir / "median.csv").string() << '\n';
    return a.spectrum.empty() ? kEmptyResult : kOk;
  });
}

inline int cmd_peaks(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto a = analyse(cfg, err);
    ensure_out_dir(cfg);
    write_file(cfg.out_dir / "peaks.json", report::peaks_json(a.peaks).dump(2) + "\n");
    out << report::peaks_table(a.peaks);
    return a.peaks.empty() ? kEmptyResult : kOk;
  });
}

/// With `author`, the author's works in `year`; otherwise the year profile.
inline int cmd_drill(const RunConfig& cfg, int year, const std::optional<std::string>& author, std::ostream& out,
                     std::ostream& err) {
  return guarded(err, [&] {
    const auto built = load_corpus(cfg, err);
    ensure_out_dir(cfg);
    if (author) {
      const auto b = author_breakdown(built.corpus, normalize_author(*author), year);
      write_file(cfg.out_dir / ("breakdown_" + std::to_string(year) + ".json"), report::breakdown_json(b).dump(2) + "\n");
      out << report::breakdown_table(b);
      return b.author_total == 0 ? kEmptyResult : kOk;
    }
    const auto p = drill_year(built.corpus, year, cfg.top_k.value_or(kDefaultDrillTop));
    write_file(cfg.out_dir / ("profile_" + std::to_string(year) + ".json"), report::profile_json(p).dump(2) + "\n");
    out << report::profile_table(p);
    return p.total_refs == 0 ? kEmptyResult : kOk;
  });
}

inline int cmd_plot(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    const auto a = analyse(cfg, err);
    ensure_out_dir(cfg);
    write_file(cfg.out_dir / "spectrogram.svg", report::spectrogram_svg(a.series, a.peaks));
    out << "wrote " << (cfg.out_dir / "spectrogram.svg").string() << '\n';
    return a.spectrum.empty() ? kEmptyResult : kOk;
  });
}

/// "1900:1970" -> {1900, 1970}.
inline YearRange parse_range(const std::string& s) {
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw CliError("range must be lo:hi, got '" + s + "'");
  try {
    std::size_t used_lo = 0, used_hi = 0;
    const auto lo_s = s.substr(0, colon), hi_s = s.substr(colon + 1);
    YearRange r{std::stoi(lo_s, &used_lo), std::stoi(hi_s, &used_hi)};
    if (used_lo != lo_s.size() || used_hi != hi_s.size()) throw std::invalid_argument("trailing characters");
    if (r.lo > r.hi) throw CliError("range lower bound exceeds upper bound in '" + s + "'");
    return r;
  } catch (const std::logic_error&) {
    throw CliError("range must be lo:hi, got '" + s + "'");
  }
}

/// Comma-separated journal titles.
inline std::set<std::string> parse_journal_list(const std::vector<std::string>& items) {
  std::set<std::string> out;
  for (const auto& item : items)
    for (auto part : text::split(item, ","))
      if (auto t = text::trim(part); !t.empty()) out.emplace(t);
  return out;
}

}  // namespace rpys::cli
