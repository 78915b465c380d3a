#pragma once

// Builders for synthetic exports and corpora used across the test suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "rpys/corpus.hpp"
#include "rpys/wos_parser.hpp"

namespace rpys::fixture {

struct FixtureRecord {
  std::string uid;
  std::string journal;
  int pub_year = 2000;
  std::vector<std::string> cited;
  std::string title = "Untitled";
};

/// Renders records in the field-tagged export format.
inline std::string tagged_export(const std::vector<FixtureRecord>& recs) {
  std::string out = "FN Clarivate Analytics Web of Science\nVR 1.0\n";
  for (const auto& r : recs) {
    out += "PT J\nAU Author, A\nTI " + r.title + "\nSO " + r.journal + "\nPY " + std::to_string(r.pub_year) +
           "\nDT Article\n";
    for (std::size_t i = 0; i < r.cited.size(); ++i) out += (i == 0 ? "CR " : "   ") + r.cited[i] + "\n";
    if (!r.uid.empty()) out += "UT " + r.uid + "\n";
    out += "ER\n\n";
  }
  out += "EF\n";
  return out;
}

inline Corpus corpus_of(const std::vector<FixtureRecord>& recs) {
  return build_corpus(parse_export(tagged_export(recs), ExportFormat::tagged).records).corpus;
}

/// One citing record per reference year, each holding `counts[i]` references
/// to year `first_year + i`, spread over a handful of authors.
inline std::vector<FixtureRecord> records_for_counts(int first_year, const std::vector<int>& counts) {
  std::vector<FixtureRecord> out;
  for (std::size_t i = 0; i < counts.size(); ++i) {
    FixtureRecord r;
    const int y = first_year + static_cast<int>(i);
    r.uid = "WOS:COUNTS" + std::to_string(y);
    r.journal = "ERKENNTNIS";
    r.pub_year = 2013;
    for (int k = 0; k < counts[i]; ++k)
      r.cited.push_back("AUTHOR" + std::to_string(k % 3) + " X, " + std::to_string(y) + ", J TEST, V" +
                        std::to_string(k % 5 + 1) + ", P1");
    if (!r.cited.empty()) out.push_back(std::move(r));
  }
  return out;
}

/// 100 references to 1905: 24 Einstein (13 to one paper), 10 Poincare and
/// 66 spread across 33 other authors with two each.
inline std::vector<FixtureRecord> engineered_1905() {
  std::vector<std::string> refs;
  for (int i = 0; i < 13; ++i) refs.push_back("EINSTEIN A, 1905, ANN PHYS-BERLIN, V17, P891");
  for (int i = 0; i < 6; ++i) refs.push_back("EINSTEIN A, 1905, ANN PHYS-BERLIN, V17, P132");
  for (int i = 0; i < 5; ++i) refs.push_back("Einstein A., 1905, ANN PHYS-BERLIN, V18, P639");
  for (int i = 0; i < 10; ++i) refs.push_back("POINCARE H, 1905, SCI HYPOTHESIS");
  for (int a = 0; a < 33; ++a) {
    const auto name = "OTHER" + std::to_string(100 + a) + " Q";
    refs.push_back(name + ", 1905, PHILOS REV, V" + std::to_string(a + 1) + ", P1");
    refs.push_back(name + ", 1905, MIND, V" + std::to_string(a + 1) + ", P2");
  }
  std::vector<FixtureRecord> out;
  for (std::size_t i = 0; i < refs.size(); i += 10) {
    FixtureRecord r;
    r.uid = "WOS:ENG" + std::to_string(1000 + i);
    r.journal = i % 20 == 0 ? "PHILOSOPHY OF SCIENCE" : "ERKENNTNIS";
    r.pub_year = 2010;
    for (std::size_t k = i; k < i + 10 && k < refs.size(); ++k) r.cited.push_back(refs[k]);
    out.push_back(std::move(r));
  }
  return out;
}

struct RandomCorpus {
  std::size_t total_cr_lines = 0;
  std::vector<FixtureRecord> records;  // includes duplicate uids
};

/// Random records with year-less references, years outside [1500, 2013]
/// and re-exported duplicates. total_cr_lines counts distinct records only.
inline RandomCorpus random_corpus(std::mt19937_64& rng) {
  RandomCorpus generated;
  std::uniform_int_distribution<int> n_records(0, 30), n_refs(0, 25), kind(0, 9), year(1500, 2013), old(1000, 1499),
      author(0, 40);
  const int nr = n_records(rng);
  for (int r = 0; r < nr; ++r) {
    FixtureRecord rec;
    rec.uid = "WOS:RND" + std::to_string(r);
    rec.journal = r % 2 ? "ERKENNTNIS" : "SYNTHESE";
    rec.pub_year = 2013;
    const int m = n_refs(rng);
    for (int i = 0; i < m; ++i) {
      const auto a = "AUTH" + std::to_string(author(rng)) + " Z";
      switch (kind(rng)) {
        case 0: rec.cited.push_back(a + ", UNDATED WORK"); break;
        case 1: rec.cited.push_back(a + ", " + std::to_string(old(rng)) + ", OLD SRC"); break;
        case 2: rec.cited.push_back(std::to_string(year(rng)) + ", ANON SRC, V1"); break;
        default: rec.cited.push_back(a + ", " + std::to_string(year(rng)) + ", J X, V" + std::to_string(kind(rng)));
      }
    }
    generated.total_cr_lines += rec.cited.size();
    generated.records.push_back(rec);
    if (kind(rng) == 0) generated.records.push_back(rec);  // exported twice
  }
  return generated;
}

}  // namespace rpys::fixture
