#include "reconips/assays.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "reconips/io.hpp"
#include "reconips/metrics.hpp"
#include "reconips/stats.hpp"

namespace reconips {

namespace fs = std::filesystem;

const std::vector<std::string> kAssayNames = {"goal", "familiarity", "play",
                                              "pain", "lesion"};

namespace {

EpisodeOptions base_options(const RunConfig& cfg) {
  EpisodeOptions o;
  o.weights = cfg.policy;
  o.rollout.horizon = cfg.horizon;
  o.stage_cfg = cfg.stage;
  o.network_rounds = cfg.network_rounds;
  return o;
}

std::string bool_field(bool b) { return b ? "1" : "0"; }

struct TraceCollector {
  bool enabled = false;
  std::vector<std::pair<std::string, std::string>>* out = nullptr;
  void add(const std::string& name, const EpisodeLog& log) const {
    if (enabled && out) out->emplace_back(name, episode_log_csv(log));
  }
};

}  // namespace

SeedResult run_goal_seed(const RunConfig& cfg, Variant variant, uint64_t seed) {
  SeedResult res;
  res.seed = seed;
  res.csv_header = "env,horizon,hazards,steps_to_goal,success";
  ModelParams params = cfg.model_params();
  TraceCollector traces{cfg.traces, &res.traces};

  struct EnvDef {
    std::string name;
    WorldSpec world;
  };
  std::vector<EnvDef> envs;
  envs.push_back({"corridor", corridor_world(cfg.corridor)});
  envs.push_back({"gridworld", grid_world(cfg.grid)});

  for (const EnvDef& env : envs) {
    double sum_hazards = 0.0, sum_time = 0.0, sum_success = 0.0;
    int n = 0;
    for (int h = cfg.goal.h_min; h <= cfg.goal.h_max; ++h) {
      EpisodeOptions opts = base_options(cfg);
      opts.rollout.horizon = h;
      opts.rollout.progress_enabled = true;
      opts.rollout.curiosity_enabled = false;
      VisitationMemory memory(env.world.rows, env.world.cols);
      Rng rng(derive_seed(seed, "goal", to_string(variant), env.name, h));
      EpisodeResult ep = run_episode(env.world, variant, params, opts, memory, rng);

      std::ostringstream row;
      row << env.name << ',' << h << ',' << ep.hazard_contacts << ','
          << ep.steps_to_goal << ',' << bool_field(ep.success);
      res.csv_rows.push_back(row.str());
      traces.add(env.name + "_H" + std::to_string(h), ep.log);

      sum_hazards += ep.hazard_contacts;
      sum_time += ep.steps_to_goal;
      sum_success += ep.success ? 1.0 : 0.0;
      ++n;
    }
    res.metrics[env.name + "_hazards"] = sum_hazards / n;
    res.metrics[env.name + "_time"] = sum_time / n;
    res.metrics[env.name + "_success"] = sum_success / n;
  }
  return res;
}

SeedResult run_familiarity_seed(const RunConfig& cfg, Variant variant,
                                uint64_t seed) {
  SeedResult res;
  res.seed = seed;
  res.csv_header =
      "side,condition,episode,scenic_entry,delta_novelty,"
      "probe_valence_scenic,probe_valence_dull,probe_arousal_scenic,"
      "probe_arousal_dull";
  ModelParams params = cfg.model_params();
  TraceCollector traces{cfg.traces, &res.traces};

  std::vector<std::pair<std::string, bool>> sides;
  sides.emplace_back("headline", cfg.corridor.scenic_left);
  if (cfg.familiarity.side_bias_control)
    sides.emplace_back("mirrored", !cfg.corridor.scenic_left);

  const std::vector<std::string> conditions = {"scenic_familiar", "dull_familiar"};

  for (const auto& [side_name, scenic_left] : sides) {
    CorridorConfig ccfg = cfg.corridor;
    ccfg.scenic_left = scenic_left;
    WorldSpec world = corridor_world(ccfg);
    const CorridorMeta& meta = *world.corridor;

    Cell scenic_probe_cell{}, dull_probe_cell{};
    for (const Cell& c : meta.scenic_lane)
      if (c.row == meta.barrier_start_row) scenic_probe_cell = c;
    for (const Cell& c : meta.dull_lane)
      if (c.row == meta.barrier_start_row) dull_probe_cell = c;

    for (const std::string& condition : conditions) {
      VisitationMemory memory(world.rows, world.cols);
      bool familiarize_scenic = condition == "scenic_familiar";
      std::vector<Action> walk = corridor_lane_walk(world, familiarize_scenic);

      for (int w = 0; w < cfg.familiarity.familiarization_walks; ++w) {
        EpisodeOptions opts = base_options(cfg);
        opts.scripted = &walk;
        Rng rng(derive_seed(seed, "fam", to_string(variant), side_name, condition,
                            "walk", w));
        EpisodeResult ep = run_episode(world, variant, params, opts, memory, rng);
        traces.add(side_name + "_" + condition + "_walk" + std::to_string(w), ep.log);
      }

      int scenic_entries = 0;
      std::vector<double> dnovs;
      double probe_nv_s = 0, probe_nv_d = 0, probe_na_s = 0, probe_na_d = 0;
      int probes = 0;
      for (int e = 0; e < cfg.familiarity.post_episodes; ++e) {
        double dnov = novelty(memory, scenic_probe_cell) -
                      novelty(memory, dull_probe_cell);
        dnovs.push_back(dnov);

        EpisodeOptions opts = base_options(cfg);
        opts.rollout.curiosity_enabled = true;
        opts.rollout.progress_enabled = true;
        opts.split_probe = affect_enabled(variant);
        Rng rng(derive_seed(seed, "fam", to_string(variant), side_name, condition,
                            "post", e));
        EpisodeResult ep = run_episode(world, variant, params, opts, memory, rng);
        traces.add(side_name + "_" + condition + "_post" + std::to_string(e), ep.log);

        if (ep.scenic_entry) ++scenic_entries;

        std::ostringstream row;
        row << side_name << ',' << condition << ',' << e << ','
            << bool_field(ep.scenic_entry) << ',' << fmt_double(dnov) << ',';
        if (ep.probe.recorded) {
          row << fmt_double(ep.probe.nv_scenic) << ',' << fmt_double(ep.probe.nv_dull)
              << ',' << fmt_double(ep.probe.na_scenic) << ','
              << fmt_double(ep.probe.na_dull);
          probe_nv_s += ep.probe.nv_scenic;
          probe_nv_d += ep.probe.nv_dull;
          probe_na_s += ep.probe.na_scenic;
          probe_na_d += ep.probe.na_dull;
          ++probes;
        } else {
          row << ",,,";
        }
        res.csv_rows.push_back(row.str());
      }

      double p_scenic = static_cast<double>(scenic_entries) /
                        static_cast<double>(cfg.familiarity.post_episodes);
      std::string prefix = side_name == "headline" ? "" : "side2_";
      res.metrics[prefix + "p_scenic_" + condition] = p_scenic;
      if (side_name == "headline" && condition == "scenic_familiar")
        res.metrics["delta_novelty_scenic_median"] = median_of(dnovs);
      if (probes > 0 && side_name == "headline") {
        // Pooled over both conditions of the headline side.
        double w = static_cast<double>(probes);
        res.metrics["probe_valence_scenic"] +=
            probe_nv_s / w / static_cast<double>(conditions.size());
        res.metrics["probe_valence_dull"] +=
            probe_nv_d / w / static_cast<double>(conditions.size());
        res.metrics["probe_arousal_scenic"] +=
            probe_na_s / w / static_cast<double>(conditions.size());
        res.metrics["probe_arousal_dull"] +=
            probe_na_d / w / static_cast<double>(conditions.size());
      }
    }
  }

  res.metrics["delta_scenic_entry"] =
      res.metrics["p_scenic_dull_familiar"] - res.metrics["p_scenic_scenic_familiar"];
  if (cfg.familiarity.side_bias_control)
    res.metrics["side2_delta_scenic_entry"] = res.metrics["side2_p_scenic_dull_familiar"] -
                                              res.metrics["side2_p_scenic_scenic_familiar"];
  return res;
}

namespace {

SeedResult play_metrics_from(const RunConfig& cfg, const WorldSpec& world,
                             const EpisodeResult& ep, uint64_t seed) {
  SeedResult res;
  res.seed = seed;
  res.csv_header =
      "episode,unique_viewpoints,scan_events,cycle_score,action_entropy,dwell_p90";

  std::vector<AgentPose> poses;
  poses.push_back(world.start);
  std::vector<Cell> cells;
  std::vector<Action> actions;
  for (const LogRow& r : ep.log.rows) {
    poses.push_back(r.pose);
    cells.push_back(r.pose.cell);
    actions.push_back(static_cast<Action>(r.action));
  }

  res.metrics["unique_viewpoints"] = unique_viewpoints(poses);
  res.metrics["scan_events"] = scan_events(actions, cells);
  res.metrics["cycle_score"] = cycle_score(poses);
  res.metrics["action_entropy"] = action_entropy_bits(actions);
  res.metrics["dwell_p90"] = dwell_p90(cells);

  std::ostringstream row;
  row << 0 << ',' << fmt_double(res.metrics["unique_viewpoints"]) << ','
      << fmt_double(res.metrics["scan_events"]) << ','
      << fmt_double(res.metrics["cycle_score"]) << ','
      << fmt_double(res.metrics["action_entropy"]) << ','
      << fmt_double(res.metrics["dwell_p90"]);
  res.csv_rows.push_back(row.str());
  if (cfg.traces) res.traces.emplace_back("play", episode_log_csv(ep.log));
  return res;
}

}  // namespace

SeedResult run_play_seed(const RunConfig& cfg, Variant variant, uint64_t seed) {
  WorldSpec world = play_world(cfg.play);
  ModelParams params = cfg.model_params();
  EpisodeOptions opts = base_options(cfg);
  opts.rollout.curiosity_enabled = cfg.play_assay.curiosity;
  opts.rollout.progress_enabled = false;
  VisitationMemory memory(world.rows, world.cols);
  Rng rng(derive_seed(seed, "play", to_string(variant)));
  EpisodeResult ep = run_episode(world, variant, params, opts, memory, rng);
  return play_metrics_from(cfg, world, ep, seed);
}

SeedResult run_play_random_seed(const RunConfig& cfg, uint64_t seed) {
  WorldSpec world = play_world(cfg.play);
  ModelParams params = cfg.model_params();
  EpisodeOptions opts = base_options(cfg);
  opts.random_policy = true;
  opts.rollout.progress_enabled = false;
  VisitationMemory memory(world.rows, world.cols);
  Rng rng(derive_seed(seed, "play", "random"));
  EpisodeResult ep = run_episode(world, Variant::Recon, params, opts, memory, rng);
  return play_metrics_from(cfg, world, ep, seed);
}

namespace {

ProbeOptions probe_options(const RunConfig& cfg, int settle, int baseline,
                           int post) {
  ProbeOptions po;
  po.weights = cfg.policy;
  po.rollout.horizon = cfg.horizon;
  po.settle_steps = settle;
  po.baseline_window = baseline;
  po.post_steps = post;
  return po;
}

std::string probe_csv_row(const char* arm, const ProbeResult& pr) {
  std::ostringstream row;
  row << arm << ',' << fmt_double(pr.baseline) << ',' << fmt_double(pr.auc) << ','
      << pr.half_life << ',' << pr.tail_duration;
  return row.str();
}

}  // namespace

SeedResult run_pain_seed(const RunConfig& cfg, Variant variant, uint64_t seed) {
  SeedResult res;
  res.seed = seed;
  res.csv_header = "arm,baseline,auc,half_life,tail_duration";
  WorldSpec world = play_world(cfg.play);
  ModelParams params = cfg.model_params();
  ProbeOptions po = probe_options(cfg, cfg.pain.settle_steps,
                                  cfg.pain.baseline_window, cfg.pain.post_steps);
  Rng rng(derive_seed(seed, "pain", to_string(variant)));
  ProbeResult pr = run_probe_episode(world, variant, params, po, rng);

  res.csv_rows.push_back(probe_csv_row("probe", pr));
  res.metrics["auc"] = pr.auc;
  res.metrics["tail_duration"] = pr.tail_duration;
  res.metrics["half_life"] = pr.half_life;
  res.metrics["baseline"] = pr.baseline;
  res.ns_trace = pr.ns;
  if (cfg.traces) res.traces.emplace_back("probe", episode_log_csv(pr.log));
  return res;
}

SeedResult run_lesion_seed(const RunConfig& cfg, Variant variant, uint64_t seed) {
  SeedResult res;
  res.seed = seed;
  res.csv_header = "arm,baseline,auc,half_life,tail_duration";
  WorldSpec world = play_world(cfg.play);
  ModelParams params = cfg.model_params();

  ProbeOptions sham_po = probe_options(cfg, cfg.lesion.settle_steps,
                                       cfg.lesion.baseline_window, cfg.lesion.window);
  ProbeOptions lesion_po = sham_po;
  lesion_po.lesioned = true;
  lesion_po.lesion_flags = LesionFlags{true, true};
  lesion_po.t_lesion = cfg.lesion.t_lesion;

  // Paired runs consume identical streams; they may diverge only through the
  // lesion flags themselves.
  uint64_t stream = derive_seed(seed, "lesion", to_string(variant));
  Rng sham_rng(stream);
  ProbeResult sham = run_probe_episode(world, variant, params, sham_po, sham_rng);
  Rng lesion_rng(stream);
  ProbeResult lesion = run_probe_episode(world, variant, params, lesion_po, lesion_rng);

  double drop = sham.auc - lesion.auc;
  res.csv_rows.push_back(probe_csv_row("sham", sham));
  res.csv_rows.push_back(probe_csv_row("lesion", lesion));
  res.metrics["auc_sham"] = sham.auc;
  res.metrics["auc_lesion"] = lesion.auc;
  res.metrics["auc_drop"] = drop;
  res.metrics["drop_pct"] = sham.auc > 0.0 ? 100.0 * drop / sham.auc : 0.0;
  res.ns_trace = sham.ns;
  if (cfg.traces) {
    res.traces.emplace_back("probe_sham", episode_log_csv(sham.log));
    res.traces.emplace_back("probe_lesion", episode_log_csv(lesion.log));
  }
  return res;
}

namespace {

using SeedFn = SeedResult (*)(const RunConfig&, Variant, uint64_t);

SeedFn seed_fn_for(const std::string& assay) {
  if (assay == "goal") return &run_goal_seed;
  if (assay == "familiarity") return &run_familiarity_seed;
  if (assay == "play") return &run_play_seed;
  if (assay == "pain") return &run_pain_seed;
  if (assay == "lesion") return &run_lesion_seed;
  throw std::invalid_argument("unknown assay: " + assay);
}

template <typename Fn>
std::vector<SeedResult> compute_seeds(const RunConfig& cfg, Fn fn) {
  std::vector<SeedResult> results(cfg.seeds.size());
  int jobs = std::max(1, std::min<int>(cfg.jobs, static_cast<int>(cfg.seeds.size())));
  if (jobs == 1) {
    for (size_t i = 0; i < cfg.seeds.size(); ++i) results[i] = fn(cfg.seeds[i]);
    return results;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= cfg.seeds.size()) return;
      try {
        results[i] = fn(cfg.seeds[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

void write_variant_outputs(const RunConfig& cfg, const std::string& assay,
                           const std::string& variant_label,
                           const std::vector<SeedResult>& results,
                           const fs::path& root) {
  fs::path dir = root / assay / variant_label;
  fs::create_directories(dir);

  for (const SeedResult& r : results) {
    std::ostringstream out;
    out << r.csv_header << '\n';
    for (const std::string& row : r.csv_rows) out << row << '\n';
    write_file(dir / ("seed_" + std::to_string(r.seed) + ".csv"), out.str());
    for (const auto& [name, csv] : r.traces)
      write_file(dir / "traces" / ("seed_" + std::to_string(r.seed)) /
                     (name + ".csv"),
                 csv);
  }

  // Per-variant summary: percentile bootstrap over per-seed values, one rng
  // substream per metric so intervals do not depend on batching.
  std::set<std::string> keys;
  for (const SeedResult& r : results)
    for (const auto& [k, v] : r.metrics) keys.insert(k);

  std::ostringstream summary;
  summary << "variant,metric,mean,ci_low,ci_high,n_seeds\n";
  for (const std::string& key : keys) {
    SeedSeries series;
    series.metric = key;
    for (const SeedResult& r : results) {
      auto it = r.metrics.find(key);
      if (it != r.metrics.end()) series.values.emplace_back(r.seed, it->second);
    }
    Rng rng(derive_seed(cfg.stats_seed, assay, variant_label, key));
    BootstrapResult b =
        bootstrap_ci(series, cfg.bootstrap_resamples, cfg.bootstrap_level, rng);
    summary << variant_label << ',' << key << ',' << fmt_double(b.mean) << ','
            << fmt_double(b.ci_low) << ',' << fmt_double(b.ci_high) << ','
            << series.values.size() << '\n';
  }
  write_file(dir / "summary.csv", summary.str());

  // Mean trace for the persistence plots.
  size_t trace_len = 0;
  for (const SeedResult& r : results)
    if (!r.ns_trace.empty())
      trace_len = trace_len == 0 ? r.ns_trace.size()
                                 : std::min(trace_len, r.ns_trace.size());
  if (trace_len > 0) {
    std::ostringstream trace;
    trace << "t,mean_ns\n";
    for (size_t t = 0; t < trace_len; ++t) {
      double sum = 0.0;
      int n = 0;
      for (const SeedResult& r : results)
        if (t < r.ns_trace.size()) {
          sum += r.ns_trace[t];
          ++n;
        }
      trace << t << ',' << fmt_double(sum / n) << '\n';
    }
    write_file(dir / "mean_ns_trace.csv", trace.str());
  }

  // Side-bias control rows for the familiarity assay.
  if (assay == "familiarity" && cfg.familiarity.side_bias_control) {
    std::ostringstream sb;
    sb << "seed,side,p_scenic_dull_familiar,p_scenic_scenic_familiar,"
          "delta_scenic_entry\n";
    for (const SeedResult& r : results) {
      sb << r.seed << ",headline,"
         << fmt_double(r.metrics.at("p_scenic_dull_familiar")) << ','
         << fmt_double(r.metrics.at("p_scenic_scenic_familiar")) << ','
         << fmt_double(r.metrics.at("delta_scenic_entry")) << '\n';
      sb << r.seed << ",mirrored,"
         << fmt_double(r.metrics.at("side2_p_scenic_dull_familiar")) << ','
         << fmt_double(r.metrics.at("side2_p_scenic_scenic_familiar")) << ','
         << fmt_double(r.metrics.at("side2_delta_scenic_entry")) << '\n';
    }
    write_file(dir / "side_bias.csv", sb.str());
  }
}

std::vector<std::string> sorted_variant_dirs(const fs::path& assay_dir) {
  std::vector<std::string> dirs;
  if (!fs::exists(assay_dir)) return dirs;
  for (const auto& entry : fs::directory_iterator(assay_dir))
    if (entry.is_directory()) dirs.push_back(entry.path().filename().string());
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

// The assay-level summary merges whichever per-variant summaries exist.
void merge_assay_summary(const fs::path& root, const std::string& assay) {
  std::ostringstream merged;
  merged << "variant,metric,mean,ci_low,ci_high,n_seeds\n";
  for (const std::string& v : sorted_variant_dirs(root / assay)) {
    fs::path file = root / assay / v / "summary.csv";
    if (!fs::exists(file)) continue;
    std::istringstream in(read_file(file));
    std::string line;
    std::getline(in, line);  // header
    while (std::getline(in, line))
      if (!line.empty()) merged << line << '\n';
  }
  write_file(root / assay / "summary.csv", merged.str());
}

void merge_side_bias(const fs::path& root) {
  std::ostringstream merged;
  merged << "variant,seed,side,p_scenic_dull_familiar,p_scenic_scenic_familiar,"
            "delta_scenic_entry\n";
  bool any = false;
  for (const std::string& v : sorted_variant_dirs(root / "familiarity")) {
    fs::path file = root / "familiarity" / v / "side_bias.csv";
    if (!fs::exists(file)) continue;
    any = true;
    std::istringstream in(read_file(file));
    std::string line;
    std::getline(in, line);
    while (std::getline(in, line))
      if (!line.empty()) merged << v << ',' << line << '\n';
  }
  if (any) write_file(root / "familiarity" / "side_bias.csv", merged.str());
}

}  // namespace

void run_assay(const RunConfig& cfg, const std::string& assay, Variant variant,
               const fs::path& root) {
  SeedFn fn = seed_fn_for(assay);
  auto results = compute_seeds(
      cfg, [&](uint64_t seed) { return fn(cfg, variant, seed); });
  write_variant_outputs(cfg, assay, to_string(variant), results, root);

  if (assay == "play") {
    auto random_results = compute_seeds(
        cfg, [&](uint64_t seed) { return run_play_random_seed(cfg, seed); });
    write_variant_outputs(cfg, assay, "random", random_results, root);
  }

  merge_assay_summary(root, assay);
  if (assay == "familiarity" && cfg.familiarity.side_bias_control)
    merge_side_bias(root);
}

void run_all(const RunConfig& cfg, const std::vector<std::string>& assays,
             const std::vector<Variant>& variants, const fs::path& root) {
  fs::create_directories(root);
  write_file(root / "config.json", cfg.to_json_text());

  char hash[32];
  std::snprintf(hash, sizeof(hash), "%016llx",
                static_cast<unsigned long long>(cfg.config_hash()));
  std::ostringstream manifest;
  manifest << "tool_version = 0.1.0\n";
  manifest << "config_hash = " << hash << "\n";
  manifest << "note = pain-tail and familiarity orderings depend on the affect "
              "gains (w_caution, k_ctrl, k_demand, bb0); values in config.json\n";
  write_file(root / "manifest.txt", manifest.str());

  for (const std::string& assay : assays)
    for (Variant v : variants) run_assay(cfg, assay, v, root);
}

namespace {

void replay_probe_metrics(const RunConfig& cfg, const std::string& assay,
                          const EpisodeLog& log, std::ostringstream& out,
                          const std::string& trace_name) {
  int settle = assay == "pain" ? cfg.pain.settle_steps : cfg.lesion.settle_steps;
  int window = assay == "pain" ? cfg.pain.baseline_window : cfg.lesion.baseline_window;
  int post = assay == "pain" ? cfg.pain.post_steps : cfg.lesion.window;
  size_t contact = static_cast<size_t>(settle + window);
  if (log.rows.size() < contact + 1) return;

  std::vector<double> ns;
  std::vector<Action> planned_post;
  for (const LogRow& r : log.rows) {
    ns.push_back(r.ns);
    if (r.t > static_cast<int>(contact)) planned_post.push_back(r.planned);
  }
  double baseline = mean_of(ns, contact - static_cast<size_t>(window), contact);
  size_t post_begin = contact + 1;
  size_t post_end = post_begin + static_cast<size_t>(post);
  out << trace_name << ",baseline," << fmt_double(baseline) << '\n';
  out << trace_name << ",auc,"
      << fmt_double(auc_above_baseline(ns, baseline, post_begin, post_end)) << '\n';
  out << trace_name << ",half_life,"
      << peak_half_life(ns, contact, baseline, post_begin, post_end) << '\n';
  out << trace_name << ",tail_duration," << turn_rate_tail(planned_post) << '\n';
}

}  // namespace

int replay_metrics(const fs::path& root) {
  RunConfig cfg = RunConfig::defaults_for(Variant::Recon);
  fs::path cfg_file = root / "config.json";
  if (fs::exists(cfg_file)) cfg = RunConfig::from_json_text(read_file(cfg_file));

  int processed = 0;
  for (const std::string& assay : kAssayNames) {
    for (const std::string& variant : sorted_variant_dirs(root / assay)) {
      fs::path traces_dir = root / assay / variant / "traces";
      if (!fs::exists(traces_dir)) continue;
      std::vector<fs::path> seed_dirs;
      for (const auto& e : fs::directory_iterator(traces_dir))
        if (e.is_directory()) seed_dirs.push_back(e.path());
      std::sort(seed_dirs.begin(), seed_dirs.end());

      for (const fs::path& seed_dir : seed_dirs) {
        std::vector<fs::path> files;
        for (const auto& e : fs::directory_iterator(seed_dir))
          if (e.path().extension() == ".csv") files.push_back(e.path());
        std::sort(files.begin(), files.end());

        std::ostringstream out;
        out << "trace,metric,value\n";
        for (const fs::path& file : files) {
          EpisodeLog log = parse_episode_log_csv(read_file(file));
          std::string name = file.stem().string();
          ++processed;

          int hazards = 0;
          bool goal = false;
          int steps_to_goal = static_cast<int>(log.rows.size());
          std::vector<AgentPose> poses;
          std::vector<Cell> cells;
          std::vector<Action> actions;
          for (const LogRow& r : log.rows) {
            hazards += r.hazard ? 1 : 0;
            if (r.goal && !goal) {
              goal = true;
              steps_to_goal = r.t + 1;
            }
            poses.push_back(r.pose);
            if (r.action >= 0) {
              cells.push_back(r.pose.cell);
              actions.push_back(static_cast<Action>(r.action));
            }
          }
          out << name << ",hazard_contacts," << hazards << '\n';
          out << name << ",goal_reached," << (goal ? 1 : 0) << '\n';
          out << name << ",steps_to_goal," << steps_to_goal << '\n';
          if (!actions.empty()) {
            out << name << ",scan_events," << scan_events(actions, cells) << '\n';
            out << name << ",action_entropy,"
                << fmt_double(action_entropy_bits(actions)) << '\n';
            out << name << ",dwell_p90," << dwell_p90(cells) << '\n';
            out << name << ",unique_viewpoints," << unique_viewpoints(poses) << '\n';
            out << name << ",cycle_score," << fmt_double(cycle_score(poses)) << '\n';
          }
          if (name.rfind("probe", 0) == 0)
            replay_probe_metrics(cfg, assay, log, out, name);
        }
        write_file(root / "replay" / assay / variant /
                       (seed_dir.filename().string() + ".csv"),
                   out.str());
      }
    }
  }
  return processed;
}

}  // namespace reconips
