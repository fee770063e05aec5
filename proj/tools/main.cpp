#include <CLI11.hpp>
#include <cstdio>
#include <filesystem>
#include <iostream>

#include "reconips/assays.hpp"
#include "reconips/io.hpp"
#include "reconips/report.hpp"

namespace fs = std::filesystem;
using namespace reconips;

namespace {

struct CommonArgs {
  std::string config_file;
  std::string variant = "recon";
  std::string assay = "lesion";
  std::string seeds;
  std::string out;
  std::vector<std::string> overrides;
  int jobs = 0;
  bool traces = false;
};

RunConfig load_config(const CommonArgs& args, bool apply_cli) {
  RunConfig cfg;
  if (!args.config_file.empty()) {
    cfg = RunConfig::from_json_text(read_file(args.config_file));
    if (apply_cli && args.variant != "all" && !args.variant.empty())
      cfg.apply_override("variant=\"" + args.variant + "\"");
  } else {
    Variant v = args.variant == "all" ? Variant::Recon
                                      : variant_from_string(args.variant);
    cfg = RunConfig::defaults_for(v);
  }
  if (apply_cli) {
    if (!args.assay.empty()) cfg.assay = args.assay;
    if (!args.seeds.empty()) cfg.seeds = parse_seed_list(args.seeds);
    if (args.jobs > 0) cfg.jobs = args.jobs;
    if (args.traces) cfg.traces = true;
    if (!args.out.empty()) cfg.results_root = args.out;
    for (const std::string& o : args.overrides) cfg.apply_override(o);
  }
  if (const char* env = std::getenv("RECONIPS_RESULTS_ROOT"); env && args.out.empty())
    cfg.results_root = env;
  return cfg;
}

int do_run(const CommonArgs& args) {
  std::vector<std::string> assays;
  if (args.assay == "all")
    assays = kAssayNames;
  else
    assays.push_back(args.assay);

  std::vector<Variant> variants;
  if (args.variant == "all")
    variants = {Variant::Recon, Variant::Ipsundrum, Variant::IpsundrumAffect};

  for (const std::string& a : assays)
    if (std::find(kAssayNames.begin(), kAssayNames.end(), a) == kAssayNames.end()) {
      std::cerr << "unknown assay: " << a << "\n";
      return 2;
    }

  if (variants.empty()) {
    RunConfig cfg = load_config(args, true);
    auto violations = cfg.validate();
    if (!violations.empty()) {
      for (const std::string& v : violations) std::cerr << "invalid: " << v << "\n";
      return 2;
    }
    run_all(cfg, assays, {cfg.variant}, cfg.results_root);
    std::cout << "wrote " << cfg.results_root << "\n";
    return 0;
  }

  // --variant all: per-variant defaults (weights gate with the variant).
  std::string root;
  for (Variant v : variants) {
    CommonArgs per = args;
    per.variant = to_string(v);
    RunConfig cfg = load_config(per, true);
    auto violations = cfg.validate();
    if (!violations.empty()) {
      for (const std::string& msg : violations) std::cerr << "invalid: " << msg << "\n";
      return 2;
    }
    run_all(cfg, assays, {v}, cfg.results_root);
    root = cfg.results_root;
  }
  std::cout << "wrote " << root << "\n";
  return 0;
}

int do_validate(const CommonArgs& args) {
  RunConfig cfg = load_config(args, true);
  auto violations = cfg.validate();
  if (violations.empty()) {
    std::cout << "ok: 0 violations\n";
  } else {
    for (const std::string& v : violations) std::cout << "violation: " << v << "\n";
    std::cout << violations.size() << " violation(s)\n";
  }
  return 0;
}

int do_report(const std::string& results) {
  ReportOutput out = write_report(results);
  std::cout << "claims: " << out.claims.size() << ", gaps: " << out.gaps.size()
            << " -> " << (fs::path(results) / "paper").string() << "\n";
  return 0;
}

int do_replay(const std::string& results) {
  int n = replay_metrics(results);
  std::cout << "replayed " << n << " trace(s) -> "
            << (fs::path(results) / "replay").string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Agent-simulation toolkit: script-execution substrate with a "
               "recurrent persistence loop, optional affect proxy, and the "
               "five-assay evaluation suite"};
  app.require_subcommand(1);

  CommonArgs args;
  std::string results = "results";

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", args.config_file, "JSON config file");
    cmd->add_option("--variant", args.variant,
                    "recon | ipsundrum | ipsundrum_affect | all");
    cmd->add_option("--assay", args.assay,
                    "goal | familiarity | play | pain | lesion | all");
    cmd->add_option("--seeds", args.seeds, "seed list, e.g. 0..19 or 1,2,7");
    cmd->add_option("--jobs", args.jobs, "seed-level worker count");
    cmd->add_option("--out", args.out, "results root directory");
    cmd->add_flag("--traces", args.traces, "store per-episode traces");
    cmd->add_option("--set", args.overrides,
                    "dotted-path override, e.g. policy.w_nov=0.3");
  };

  CLI::App* run_cmd = app.add_subcommand("run", "run an assay over a seed set");
  add_common(run_cmd);

  CLI::App* validate_cmd =
      app.add_subcommand("validate", "check config invariants");
  add_common(validate_cmd);

  CLI::App* report_cmd =
      app.add_subcommand("report", "export claims and plot data");
  report_cmd->add_option("--results", results, "results root directory");

  CLI::App* replay_cmd =
      app.add_subcommand("replay", "re-derive metrics from stored traces");
  replay_cmd->add_option("--results", results, "results root directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) return do_run(args);
    if (validate_cmd->parsed()) return do_validate(args);
    if (report_cmd->parsed()) return do_report(results);
    if (replay_cmd->parsed()) return do_replay(results);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
