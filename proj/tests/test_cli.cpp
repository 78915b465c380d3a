#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fixtures.hpp"
#include "rpys/cli.hpp"

namespace {

namespace fs = std::filesystem;
using namespace rpys;
using namespace rpys::cli;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("rpys_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string write(const std::string& name, const std::string& content) {
    std::ofstream(dir_ / name, std::ios::binary) << content;
    return (dir_ / name).string();
  }

  std::string read(const std::string& name) const {
    std::ifstream in(dir_ / "out" / name, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  RunConfig config_for(std::vector<std::string> inputs) const {
    RunConfig cfg;
    cfg.inputs = std::move(inputs);
    cfg.out_dir = dir_ / "out";
    cfg.out_dir_given = true;
    return cfg;
  }

  fs::path dir_;
  std::ostringstream out_, err_;
};

std::size_t count_of(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

TEST_F(CliTest, StatsTwoJournals) {
  const auto path = write("a.txt", fixture::tagged_export({{"WOS:1", "SYNTHESE", 2000, {"A B, 1900, C", "D E, 1901, F"}},
                                                           {"WOS:2", "ERKENNTNIS", 2000, {"A B, 1900, C"}}}));
  EXPECT_EQ(cmd_stats(config_for({path}), out_, err_), kOk);
  const auto table = out_.str();
  EXPECT_NE(table.find("ERKENNTNIS"), std::string::npos);
  EXPECT_TRUE(std::regex_search(table, std::regex(R"(Total\s+2\s+3\n)"))) << table;
  EXPECT_EQ(read("stats.csv"), "journal,papers,cited_references\nERKENNTNIS,1,1\nSYNTHESE,1,2\nTotal,2,3\n");
}

TEST_F(CliTest, StatsOnEmptyCorpus) {
  const auto path = write("empty.txt", "FN Clarivate Analytics Web of Science\nVR 1.0\nEF\n");
  EXPECT_EQ(cmd_stats(config_for({path}), out_, err_), kEmptyResult);
  EXPECT_TRUE(std::regex_search(out_.str(), std::regex(R"(Total\s+0\s+0\n)"))) << out_.str();
}

TEST_F(CliTest, MissingInputIsExitTwoWithPath) {
  const auto missing = (dir_ / "nowhere" / "savedrecs.txt").string();
  EXPECT_EQ(cmd_stats(config_for({missing}), out_, err_), kUsageOrIo);
  EXPECT_NE(err_.str().find(missing), std::string::npos);
}

TEST_F(CliTest, UnrecognizedFormatIsExitTwo) {
  const auto path = write("page.html", "<html>\n</html>\n");
  EXPECT_EQ(cmd_spectrum(config_for({path}), out_, err_), kUsageOrIo);
  EXPECT_NE(err_.str().find("<html>"), std::string::npos);
}

TEST_F(CliTest, StrictModeFailsOnMalformedRecord) {
  const auto path = write("bad.txt", "FN x\nPT J\nSO A\nPY 2000\nEF\n");
  auto cfg = config_for({path});
  EXPECT_EQ(cmd_stats(cfg, out_, err_), kEmptyResult);
  cfg.strict = true;
  EXPECT_EQ(cmd_stats(cfg, out_, err_), kUsageOrIo);
}

TEST_F(CliTest, SpectrumCsvFiles) {
  const auto path = write("a.txt", fixture::tagged_export(fixture::records_for_counts(1901, {1, 2, 10, 2, 1})));
  EXPECT_EQ(cmd_spectrum(config_for({path}), out_, err_), kOk);
  EXPECT_EQ(read("rpys.csv"), "rpy,n_cr\n1901,1\n1902,2\n1903,10\n1904,2\n1905,1\n");
  EXPECT_EQ(read("median.csv"),
            "rpy,n_cr,median5,deviation\n1901,1,2.0,-1.0\n1902,2,2.0,0.0\n1903,10,2.0,8.0\n1904,2,2.0,0.0\n"
            "1905,1,2.0,-1.0\n");
}

TEST_F(CliTest, SpectrumConstantCountsAndPinnedRange) {
  const auto path = write("a.txt", fixture::tagged_export(fixture::records_for_counts(1950, {3, 3, 3, 3})));
  auto cfg = config_for({path});
  cfg.range = YearRange{1948, 1955};
  EXPECT_EQ(cmd_spectrum(cfg, out_, err_), kOk);
  EXPECT_EQ(read("rpys.csv"), "rpy,n_cr\n1948,0\n1949,0\n1950,3\n1951,3\n1952,3\n1953,3\n1954,0\n1955,0\n");
  cfg.range.reset();
  EXPECT_EQ(cmd_spectrum(cfg, out_, err_), kOk);
  const auto median = read("median.csv");
  EXPECT_EQ(count_of(median, ",0.0\n"), 4u);
  EXPECT_EQ(count_of(median, "\n"), 5u);
}

TEST_F(CliTest, MedianCsvIsSelfConsistent) {
  std::vector<int> counts;
  for (int i = 0; i < 60; ++i) counts.push_back((i * 37) % 23 + (i % 7 == 0 ? 40 : 0));
  const auto path = write("a.txt", fixture::tagged_export(fixture::records_for_counts(1900, counts)));
  ASSERT_EQ(cmd_spectrum(config_for({path}), out_, err_), kOk);
  std::istringstream csv(read("median.csv"));
  std::string line;
  std::getline(csv, line);
  while (std::getline(csv, line)) {
    int year = 0;
    long n = 0;
    double med = 0, dev = 0;
    ASSERT_EQ(std::sscanf(line.c_str(), "%d,%ld,%lf,%lf", &year, &n, &med, &dev), 4) << line;
    EXPECT_DOUBLE_EQ(dev, static_cast<double>(n) - med) << line;
  }
}

TEST_F(CliTest, UnwritableOutputDirectory) {
  const auto path = write("a.txt", fixture::tagged_export(fixture::records_for_counts(1901, {1, 2, 10, 2, 1})));
  write("blocker", "not a directory");
  auto cfg = config_for({path});
  cfg.out_dir = dir_ / "blocker" / "sub";
  EXPECT_EQ(cmd_spectrum(cfg, out_, err_), kUsageOrIo);
}

TEST_F(CliTest, PeaksJson) {
  // padded so that 1901..1905 see full windows with median 2: deviations
  // there are [0, 3, 0, 5, 0] and 0 everywhere else
  const auto path =
      write("a.txt", fixture::tagged_export(fixture::records_for_counts(1899, {2, 2, 2, 5, 2, 7, 2, 2, 2})));
  EXPECT_EQ(cmd_peaks(config_for({path}), out_, err_), kOk);
  const auto j = nlohmann::json::parse(read("peaks.json"));
  ASSERT_EQ(j.size(), 2u);
  EXPECT_EQ(j[0]["year"], 1904);
  EXPECT_EQ(j[0]["rank"], 1);
  EXPECT_EQ(j[0]["deviation"], 5.0);
  EXPECT_EQ(j[1]["year"], 1902);
  EXPECT_EQ(j[1]["deviation"], 3.0);
  std::vector<std::string> keys;
  const auto ordered = nlohmann::ordered_json::parse(read("peaks.json"));
  for (auto it = ordered[0].begin(); it != ordered[0].end(); ++it) keys.push_back(it.key());
  EXPECT_EQ(keys, (std::vector<std::string>{"year", "n_cr", "median5", "deviation", "rank"}));
}

TEST_F(CliTest, PeaksFlatAndTopOne) {
  const auto flat = write("flat.txt", fixture::tagged_export(fixture::records_for_counts(1901, {4, 4, 4, 4})));
  EXPECT_EQ(cmd_peaks(config_for({flat}), out_, err_), kEmptyResult);
  EXPECT_EQ(read("peaks.json"), "[]\n");

  const auto path =
      write("a.txt", fixture::tagged_export(fixture::records_for_counts(1899, {2, 2, 2, 5, 2, 7, 2, 2, 2})));
  auto cfg = config_for({path});
  cfg.top_k = 1;
  EXPECT_EQ(cmd_peaks(cfg, out_, err_), kOk);
  EXPECT_EQ(nlohmann::json::parse(read("peaks.json")).size(), 1u);
}

TEST_F(CliTest, PeaksAreASubsetOfMedianRowsAboveThreshold) {
  std::vector<int> counts;
  for (int i = 0; i < 80; ++i) counts.push_back((i * 53) % 31 + 1);
  const auto path = write("a.txt", fixture::tagged_export(fixture::records_for_counts(1900, counts)));
  auto cfg = config_for({path});
  cfg.min_deviation = 4.0;
  ASSERT_EQ(cmd_spectrum(cfg, out_, err_), kOk);
  ASSERT_EQ(cmd_peaks(cfg, out_, err_), kOk);
  std::map<int, double> dev;
  std::istringstream csv(read("median.csv"));
  std::string line;
  std::getline(csv, line);
  while (std::getline(csv, line)) {
    int y = 0;
    long n = 0;
    double m = 0, d = 0;
    std::sscanf(line.c_str(), "%d,%ld,%lf,%lf", &y, &n, &m, &d);
    dev[y] = d;
  }
  for (const auto& p : nlohmann::json::parse(read("peaks.json"))) {
    const int y = p["year"];
    ASSERT_TRUE(dev.contains(y));
    EXPECT_GT(dev[y], 4.0);
  }
}

TEST_F(CliTest, DrillEngineeredFixture) {
  const auto path = write("a.txt", fixture::tagged_export(fixture::engineered_1905()));
  EXPECT_EQ(cmd_drill(config_for({path}), 1905, std::nullopt, out_, err_), kOk);
  const auto j = nlohmann::json::parse(read("profile_1905.json"));
  EXPECT_EQ(j["total_refs"], 100);
  EXPECT_EQ(j["authors"][0]["name"], "EINSTEIN A");
  EXPECT_EQ(j["authors"][0]["count"], 24);
  EXPECT_EQ(j["authors"][0]["share"], 24.0);
  EXPECT_EQ(j["authors"][1]["share"], 10.0);
  EXPECT_EQ(j["unattributed"], 0);
  EXPECT_NE(out_.str().find("24.0%"), std::string::npos);
}

TEST_F(CliTest, DrillEmptyYear) {
  const auto path = write("a.txt", fixture::tagged_export(fixture::engineered_1905()));
  EXPECT_EQ(cmd_drill(config_for({path}), 1776, std::nullopt, out_, err_), kEmptyResult);
  const auto j = nlohmann::json::parse(read("profile_1776.json"));
  EXPECT_EQ(j["total_refs"], 0);
  EXPECT_TRUE(j["authors"].empty());
  EXPECT_TRUE(j["works"].empty());
}

TEST_F(CliTest, DrillAuthorBreakdown) {
  const auto path = write("a.txt", fixture::tagged_export({{"WOS:1", "J", 2000, {"ROE R, 1960, A", "DOE J, 1960, B"}}}));
  EXPECT_EQ(cmd_drill(config_for({path}), 1960, std::string("Roe, R."), out_, err_), kOk);
  const auto j = nlohmann::json::parse(read("breakdown_1960.json"));
  EXPECT_EQ(j["author"], "ROE R");
  ASSERT_EQ(j["works"].size(), 1u);
  EXPECT_EQ(j["works"][0]["share"], 100.0);
}

TEST_F(CliTest, PlotFiveYearFixture) {
  const auto path = write("a.txt", fixture::tagged_export(fixture::records_for_counts(1901, {1, 2, 10, 2, 1})));
  EXPECT_EQ(cmd_plot(config_for({path}), out_, err_), kOk);
  const auto svg = read("spectrogram.svg");
  EXPECT_EQ(count_of(svg, "<polyline"), 2u);
  EXPECT_EQ(count_of(svg, "class=\"peak-label\""), 1u);
  EXPECT_NE(svg.find(">1903</text>"), std::string::npos);
  EXPECT_EQ(cmd_plot(config_for({path}), out_, err_), kOk);
  EXPECT_EQ(read("spectrogram.svg"), svg);
}

TEST_F(CliTest, PlotEmptySpectrum) {
  const auto path = write("a.txt", fixture::tagged_export({{"WOS:1", "J", 2000, {"HUME D, NO YEAR"}}}));
  EXPECT_EQ(cmd_plot(config_for({path}), out_, err_), kEmptyResult);
  const auto svg = read("spectrogram.svg");
  EXPECT_EQ(count_of(svg, "<polyline"), 0u);
  EXPECT_NE(svg.find("class=\"axes\""), std::string::npos);
}

TEST_F(CliTest, GlobInputsAndTabDelimited) {
  write("part1.txt", fixture::tagged_export({{"WOS:1", "J", 2000, {"A B, 1900, C"}}}));
  write("part2.txt", fixture::tagged_export({{"WOS:2", "J", 2000, {"A B, 1900, C"}}}));
  write("part3.tsv", "PT\tSO\tPY\tCR\tUT\nJ\tK\t2001\tX Y, 1950, Z; X Y, 1951, Z\tWOS:3\n");
  auto cfg = config_for({(dir_ / "part*.txt").string(), (dir_ / "part3.tsv").string()});
  EXPECT_EQ(cmd_stats(cfg, out_, err_), kOk);
  EXPECT_EQ(read("stats.csv"), "journal,papers,cited_references\nJ,2,2\nK,1,2\nTotal,3,4\n");
  cfg.inputs = {(dir_ / "nomatch*.txt").string()};
  EXPECT_EQ(cmd_stats(cfg, out_, err_), kUsageOrIo);
}

TEST(ParseRange, Forms) {
  EXPECT_EQ(parse_range("1900:1970").lo, 1900);
  EXPECT_EQ(parse_range("1900:1970").hi, 1970);
  EXPECT_THROW(parse_range("1900-1970"), CliError);
  EXPECT_THROW(parse_range("1970:1900"), CliError);
  EXPECT_THROW(parse_range("19x0:1970"), CliError);
}

TEST(ParseJournalList, SplitsOnCommas) {
  const auto s = parse_journal_list({"ERKENNTNIS, SYNTHESE", "PHILOSOPHY OF SCIENCE"});
  EXPECT_EQ(s.size(), 3u);
  EXPECT_TRUE(s.contains("SYNTHESE"));
}

// The installed binary: usage errors and missing files exit with 2.
TEST(Binary, ExitCodes) {
  const std::string cli = RPYS_CLI_PATH;
  auto run = [&](const std::string& args) {
    const int status = std::system((cli + " " + args + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  EXPECT_EQ(run("stats --input /definitely/missing/savedrecs.txt"), 2);
  EXPECT_EQ(run("bogus"), 2);
  EXPECT_EQ(run("drill --input x.txt"), 2);
  EXPECT_EQ(run("--help"), 0);
  EXPECT_EQ(run(std::string("stats --input ") + RPYS_TEST_DATA_DIR + "/three_records.txt"), 0);
  EXPECT_EQ(run(std::string("stats --strict --input ") + RPYS_TEST_DATA_DIR + "/three_records.txt"), 2);
}

}  // namespace
