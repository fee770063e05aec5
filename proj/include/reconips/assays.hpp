#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "reconips/agent.hpp"
#include "reconips/config.hpp"

namespace reconips {

extern const std::vector<std::string> kAssayNames;  // the five protocols

// Everything one seed contributes to an assay: rows for its per-seed CSV,
// per-seed metric values for the summary, and optional episode traces.
struct SeedResult {
  uint64_t seed = 0;
  std::string csv_header;
  std::vector<std::string> csv_rows;
  std::map<std::string, double> metrics;
  std::vector<std::pair<std::string, std::string>> traces;  // (name, csv)
  std::vector<double> ns_trace;  // pain/lesion sham trace for plot data
};

SeedResult run_goal_seed(const RunConfig& cfg, Variant variant, uint64_t seed);
SeedResult run_familiarity_seed(const RunConfig& cfg, Variant variant, uint64_t seed);
SeedResult run_play_seed(const RunConfig& cfg, Variant variant, uint64_t seed);
SeedResult run_play_random_seed(const RunConfig& cfg, uint64_t seed);
SeedResult run_pain_seed(const RunConfig& cfg, Variant variant, uint64_t seed);
SeedResult run_lesion_seed(const RunConfig& cfg, Variant variant, uint64_t seed);

// Runs one assay for one variant over the configured seeds (optionally in a
// seed-level worker pool; output is byte-identical to serial execution) and
// writes seed CSVs, the per-variant summary, and the merged assay summary.
void run_assay(const RunConfig& cfg, const std::string& assay, Variant variant,
               const std::filesystem::path& results_root);

// Assay x variant sweep plus manifest and resolved config.
void run_all(const RunConfig& cfg, const std::vector<std::string>& assays,
             const std::vector<Variant>& variants,
             const std::filesystem::path& results_root);

// Re-derives trace-computable metrics from stored episode logs under
// results_root/<assay>/<variant>/traces and writes them under replay/.
// Returns the number of trace files processed.
int replay_metrics(const std::filesystem::path& results_root);

}  // namespace reconips
