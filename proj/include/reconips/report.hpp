#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace reconips {

// Claims export: a flat, diff-friendly key-value file mirroring the metric
// registry, plus per-figure plot-data CSVs and an explicit gap report.

struct Claim {
  double value = 0.0;
  std::optional<double> ci_low;
  std::optional<double> ci_high;
  bool operator==(const Claim&) const = default;
};

using ClaimTable = std::map<std::string, Claim>;

// One claim per line: "key = value" or "key = value [lo, hi]",
// values formatted to 3 significant digits.
std::string emit_claims(const ClaimTable& table);
ClaimTable parse_claims(const std::string& text);

// Every claim key the reporting pipeline expects.
std::vector<std::string> claim_registry();

struct SummaryRow {
  std::string assay;
  std::string variant;
  std::string metric;
  double mean = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  int n_seeds = 0;
};

std::vector<SummaryRow> read_summaries(const std::filesystem::path& results_root);

struct ReportOutput {
  ClaimTable claims;
  std::vector<std::string> gaps;  // registry keys with no value yet
};

ReportOutput build_report(const std::filesystem::path& results_root);

// Writes results/paper/claims.txt, gaps.txt and the plot-data CSVs.
ReportOutput write_report(const std::filesystem::path& results_root);

}  // namespace reconips
