#include "reconips/report.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

#include "reconips/assays.hpp"
#include "reconips/io.hpp"
#include "reconips/variant.hpp"

namespace reconips {

namespace fs = std::filesystem;

std::string emit_claims(const ClaimTable& table) {
  std::ostringstream out;
  for (const auto& [key, claim] : table) {
    out << key << " = " << fmt_sig3(claim.value);
    if (claim.ci_low && claim.ci_high)
      out << " [" << fmt_sig3(*claim.ci_low) << ", " << fmt_sig3(*claim.ci_high)
          << "]";
    out << '\n';
  }
  return out.str();
}

ClaimTable parse_claims(const std::string& text) {
  ClaimTable table;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    auto eq = line.find(" = ");
    if (eq == std::string::npos) throw std::invalid_argument("bad claim line: " + line);
    std::string key = line.substr(0, eq);
    std::string rest = line.substr(eq + 3);
    Claim claim;
    auto bracket = rest.find('[');
    if (bracket == std::string::npos) {
      claim.value = std::stod(rest);
    } else {
      claim.value = std::stod(rest.substr(0, bracket));
      auto comma = rest.find(',', bracket);
      auto close = rest.find(']', bracket);
      if (comma == std::string::npos || close == std::string::npos)
        throw std::invalid_argument("bad claim interval: " + line);
      claim.ci_low = std::stod(rest.substr(bracket + 1, comma - bracket - 1));
      claim.ci_high = std::stod(rest.substr(comma + 1, close - comma - 1));
    }
    table[key] = claim;
  }
  return table;
}

namespace {

const std::vector<std::string> kSuffixes = {"recon", "humphrey", "hb"};

struct Mapping {
  std::string assay;
  std::string variant_dir;  // results directory name
  std::string metric;
  std::string claim;        // claim key
  bool with_ci = false;
};

std::string dir_for_suffix(const std::string& suffix) {
  if (suffix == "recon") return "recon";
  if (suffix == "humphrey") return "ipsundrum";
  if (suffix == "hb") return "ipsundrum_affect";
  return suffix;
}

std::vector<Mapping> claim_mappings() {
  std::vector<Mapping> maps;
  for (const std::string& s : kSuffixes) {
    std::string dir = dir_for_suffix(s);
    for (const char* env : {"corridor", "gridworld"})
      for (const char* m : {"hazards", "time", "success"})
        maps.push_back({"goal", dir, std::string(env) + "_" + m,
                        "goal_" + std::string(env) + "_all_" + m + "_" + s, true});
    maps.push_back({"familiarity", dir, "delta_scenic_entry",
                    "fam_delta_scenic_entry_" + s, true});
    maps.push_back({"play", dir, "scan_events", "play_scan_events_" + s, true});
    maps.push_back({"play", dir, "cycle_score", "play_cycle_score_" + s, true});
    maps.push_back({"play", dir, "action_entropy",
                    "play_action_entropy_" + s + "_curiosity", false});
    maps.push_back({"play", dir, "dwell_p90", "play_dwell_p90_" + s + "_curiosity",
                    false});
    maps.push_back({"pain", dir, "auc", "pain_auc_" + s, true});
    maps.push_back({"pain", dir, "tail_duration", "pain_tail_duration_" + s, true});
    maps.push_back({"pain", dir, "half_life", "pain_half_life_" + s, false});
    maps.push_back({"lesion", dir, "auc_drop", "lesion_auc_drop_" + s, true});
    maps.push_back({"lesion", dir, "drop_pct", "lesion_auc_drop_pct_" + s, false});
  }
  maps.push_back({"familiarity", "ipsundrum_affect", "delta_novelty_scenic_median",
                  "fam_median_delta_novelty_hb_scenic", false});
  maps.push_back({"familiarity", "ipsundrum_affect", "probe_valence_scenic",
                  "fam_probe_valence_scenic_hb", false});
  maps.push_back({"familiarity", "ipsundrum_affect", "probe_valence_dull",
                  "fam_probe_valence_dull_hb", false});
  maps.push_back({"familiarity", "ipsundrum_affect", "probe_arousal_scenic",
                  "fam_probe_arousal_scenic_hb", false});
  maps.push_back({"familiarity", "ipsundrum_affect", "probe_arousal_dull",
                  "fam_probe_arousal_dull_hb", false});
  maps.push_back({"play", "random", "action_entropy", "play_action_entropy_random",
                  false});
  maps.push_back({"play", "random", "dwell_p90", "play_dwell_p90_random", false});
  return maps;
}

}  // namespace

std::vector<std::string> claim_registry() {
  std::vector<std::string> keys;
  for (const Mapping& m : claim_mappings()) keys.push_back(m.claim);
  keys.push_back("play_unique_viewpoints_range_low");
  keys.push_back("play_unique_viewpoints_range_high");
  keys.push_back("goal_directed_seeds");
  keys.push_back("headline_seeds");
  keys.push_back("pain_post_steps");
  std::sort(keys.begin(), keys.end());
  return keys;
}

std::vector<SummaryRow> read_summaries(const fs::path& root) {
  std::vector<SummaryRow> rows;
  for (const std::string& assay : kAssayNames) {
    fs::path file = root / assay / "summary.csv";
    if (!fs::exists(file)) continue;
    std::istringstream in(read_file(file));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      auto f = split_csv_line(line);
      if (f.size() != 6) throw std::invalid_argument("bad summary row: " + line);
      SummaryRow r;
      r.assay = assay;
      r.variant = f[0];
      r.metric = f[1];
      r.mean = std::stod(f[2]);
      r.ci_low = std::stod(f[3]);
      r.ci_high = std::stod(f[4]);
      r.n_seeds = std::stoi(f[5]);
      rows.push_back(r);
    }
  }
  return rows;
}

ReportOutput build_report(const fs::path& root) {
  std::vector<SummaryRow> rows = read_summaries(root);
  auto find_row = [&](const std::string& assay, const std::string& variant,
                      const std::string& metric) -> const SummaryRow* {
    for (const SummaryRow& r : rows)
      if (r.assay == assay && r.variant == variant && r.metric == metric) return &r;
    return nullptr;
  };

  ReportOutput out;
  for (const Mapping& m : claim_mappings()) {
    const SummaryRow* r = find_row(m.assay, m.variant_dir, m.metric);
    if (!r) continue;
    Claim claim;
    claim.value = r->mean;
    if (m.with_ci) {
      claim.ci_low = r->ci_low;
      claim.ci_high = r->ci_high;
    }
    out.claims[m.claim] = claim;
  }

  // Coverage range over the three model variants.
  std::vector<double> uv;
  for (const std::string& s : kSuffixes)
    if (const SummaryRow* r = find_row("play", dir_for_suffix(s), "unique_viewpoints"))
      uv.push_back(r->mean);
  if (!uv.empty()) {
    out.claims["play_unique_viewpoints_range_low"] =
        Claim{*std::min_element(uv.begin(), uv.end()), {}, {}};
    out.claims["play_unique_viewpoints_range_high"] =
        Claim{*std::max_element(uv.begin(), uv.end()), {}, {}};
  }

  if (const SummaryRow* r = find_row("goal", "recon", "corridor_time"))
    out.claims["goal_directed_seeds"] = Claim{static_cast<double>(r->n_seeds), {}, {}};
  for (const SummaryRow& r : rows) {
    out.claims["headline_seeds"] = Claim{static_cast<double>(r.n_seeds), {}, {}};
    break;
  }
  fs::path cfg_file = root / "config.json";
  if (fs::exists(cfg_file)) {
    RunConfig cfg = RunConfig::from_json_text(read_file(cfg_file));
    out.claims["pain_post_steps"] = Claim{static_cast<double>(cfg.pain.post_steps), {}, {}};
  }

  for (const std::string& key : claim_registry())
    if (!out.claims.count(key)) out.gaps.push_back(key);
  return out;
}

namespace {

void write_plot_data(const fs::path& root, const std::vector<SummaryRow>& rows) {
  fs::path paper = root / "paper";

  auto emit_rows = [&](const std::string& assay,
                       const std::vector<std::string>& metrics,
                       const fs::path& file) {
    std::ostringstream out;
    out << "variant,metric,mean,ci_low,ci_high\n";
    bool any = false;
    for (const SummaryRow& r : rows) {
      if (r.assay != assay) continue;
      if (std::find(metrics.begin(), metrics.end(), r.metric) == metrics.end())
        continue;
      out << r.variant << ',' << r.metric << ',' << fmt_double(r.mean) << ','
          << fmt_double(r.ci_low) << ',' << fmt_double(r.ci_high) << '\n';
      any = true;
    }
    if (any) write_file(file, out.str());
  };

  emit_rows("familiarity",
            {"p_scenic_dull_familiar", "p_scenic_scenic_familiar",
             "delta_scenic_entry"},
            paper / "fam_scenic_entry.csv");
  emit_rows("play",
            {"unique_viewpoints", "scan_events", "cycle_score", "action_entropy",
             "dwell_p90"},
            paper / "play_metrics.csv");
  emit_rows("pain", {"auc", "tail_duration", "half_life"},
            paper / "pain_tail.csv");
  emit_rows("lesion", {"auc_sham", "auc_lesion", "auc_drop", "drop_pct"},
            paper / "lesion_auc.csv");

  // Per-variant mean traces for the pain-tail figure.
  std::ostringstream traces;
  traces << "variant,t,mean_ns\n";
  bool any_trace = false;
  fs::path pain_dir = root / "pain";
  if (fs::exists(pain_dir)) {
    std::vector<std::string> variants;
    for (const auto& e : fs::directory_iterator(pain_dir))
      if (e.is_directory()) variants.push_back(e.path().filename().string());
    std::sort(variants.begin(), variants.end());
    for (const std::string& v : variants) {
      fs::path file = pain_dir / v / "mean_ns_trace.csv";
      if (!fs::exists(file)) continue;
      std::istringstream in(read_file(file));
      std::string line;
      std::getline(in, line);
      while (std::getline(in, line))
        if (!line.empty()) {
          traces << v << ',' << line << '\n';
          any_trace = true;
        }
    }
  }
  if (any_trace) write_file(paper / "pain_traces.csv", traces.str());
}

}  // namespace

ReportOutput write_report(const fs::path& root) {
  ReportOutput out = build_report(root);
  write_file(root / "paper" / "claims.txt", emit_claims(out.claims));

  std::ostringstream gaps;
  for (const std::string& g : out.gaps) gaps << g << '\n';
  write_file(root / "paper" / "gaps.txt", gaps.str());

  write_plot_data(root, read_summaries(root));
  return out;
}

}  // namespace reconips
