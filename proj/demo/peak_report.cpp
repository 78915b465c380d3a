// Runs the full analysis on one export file and prints each peak year with
// its leading authors and works.
//
//   rpys_demo [export.txt]
//
// Without an argument the bundled sample export is used.

#include <fstream>
#include <iostream>
#include <sstream>

#include "rpys/rpys.hpp"

#ifndef RPYS_DEMO_SAMPLE
#define RPYS_DEMO_SAMPLE "sample_savedrecs.txt"
#endif

int main(int argc, char** argv) {
  const std::string path = argc > 1 ? argv[1] : RPYS_DEMO_SAMPLE;
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "cannot open " << path << "\n";
    return 2;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  const auto parsed = rpys::parse_export(text, rpys::detect_format(text));
  const auto built = rpys::build_corpus(parsed.records);
  const auto& corpus = built.corpus;
  std::cout << corpus.size() << " records, " << corpus.cited_reference_count() << " cited references\n\n";

  const auto spectrum = rpys::compute_spectrum(corpus, rpys::default_valid_range(corpus));
  const auto series = rpys::median_deviation(spectrum);
  const auto peaks = rpys::detect_peaks(series, 0.0, 3);
  std::cout << rpys::report::peaks_table(peaks) << "\n";

  for (const auto& profile : rpys::profile_all_peaks(corpus, peaks, 3)) {
    std::cout << rpys::report::profile_table(profile) << "\n";
    if (!profile.author_rows.empty()) {
      const auto& top = profile.author_rows.front().author;
      std::cout << rpys::report::breakdown_table(rpys::author_breakdown(corpus, top, profile.year)) << "\n";
    }
  }
  return 0;
}
