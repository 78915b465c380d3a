// rpys: reference publication year spectroscopy over Web of Science exports.

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "rpys/cli.hpp"

int main(int argc, char** argv) {
  using namespace rpys::cli;

  CLI::App app{"Reference publication year spectroscopy for Web of Science exports"};
  app.require_subcommand(1);
  app.fallthrough();

  RunConfig cfg;
  std::string format = "auto";
  std::vector<std::string> journals;
  std::string range;
  std::optional<std::size_t> top;
  std::string out_dir;

  app.add_option("--input", cfg.inputs, "Export file(s) or glob pattern(s)")->required()->expected(1, -1);
  app.add_option("--format", format, "Input format")
      ->check(CLI::IsMember({"auto", "tagged", "tsv"}))
      ->capture_default_str();
  app.add_option("--journals", journals, "Restrict to these source titles (comma separated)");
  app.add_option("--range", range, "Valid referenced publication years, lo:hi (pins the spectrum span)");
  app.add_option("--min-deviation", cfg.min_deviation, "Peak threshold on the median deviation")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  app.add_option("--top", top, "Keep the k highest-ranked peaks / rows")->check(CLI::PositiveNumber);
  app.add_option("--out", out_dir, "Output directory (default: current directory)");
  app.add_flag("--strict", cfg.strict, "Fail on the first malformed record instead of skipping it");

  auto* stats = app.add_subcommand("stats", "Papers and cited references per journal");
  auto* spectrum = app.add_subcommand("spectrum", "Write rpys.csv and median.csv");
  auto* peaks = app.add_subcommand("peaks", "Write peaks.json and print the ranked peaks");
  auto* drill = app.add_subcommand("drill", "Most cited authors and works of one year");
  int year = 0;
  std::optional<std::string> author;
  drill->add_option("--year", year, "Referenced publication year")->required();
  drill->add_option("--author", author, "Break one author's references down by work");
  auto* plot = app.add_subcommand("plot", "Write spectrogram.svg");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageOrIo;
  }

  try {
    static const std::map<std::string, FormatChoice> kFormats{
        {"auto", FormatChoice::automatic}, {"tagged", FormatChoice::tagged}, {"tsv", FormatChoice::tsv}};
    cfg.format = kFormats.at(format);
    if (!journals.empty()) cfg.journals = parse_journal_list(journals);
    if (!range.empty()) cfg.range = parse_range(range);
    cfg.top_k = top;
    if (!out_dir.empty()) {
      cfg.out_dir = out_dir;
      cfg.out_dir_given = true;
    }
  } catch (const CliError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageOrIo;
  }

  if (stats->parsed()) return cmd_stats(cfg, std::cout, std::cerr);
  if (spectrum->parsed()) return cmd_spectrum(cfg, std::cout, std::cerr);
  if (peaks->parsed()) return cmd_peaks(cfg, std::cout, std::cerr);
  if (drill->parsed()) return cmd_drill(cfg, year, author, std::cout, std::cerr);
  if (plot->parsed()) return cmd_plot(cfg, std::cout, std::cerr);
  return kUsageOrIo;
}
