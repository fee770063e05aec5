// Acceptance suite: runs every acceptance criterion at its stated tolerance
// and prints one pass/fail line per criterion. Exit status is the number of
// failed criteria.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>
#include <vector>

#include "reconips/assays.hpp"
#include "reconips/io.hpp"
#include "reconips/metrics.hpp"
#include "reconips/report.hpp"
#include "reconips/stats.hpp"

using namespace reconips;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int idx, const char* name, bool pass, const std::string& detail) {
  std::printf("[%2d] %s  %s (%s)\n", idx, pass ? "PASS" : "FAIL", name,
              detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(double v) { return fmt_double(v); }

// Seed-level worker pool; results land in seed order.
template <typename Fn>
std::vector<SeedResult> over_seeds(const RunConfig& cfg, Fn fn) {
  std::vector<SeedResult> results(cfg.seeds.size());
  std::atomic<size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= cfg.seeds.size()) return;
      try {
        results[i] = fn(cfg, cfg.seeds[i]);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  unsigned jobs = std::min<unsigned>(std::thread::hardware_concurrency(),
                                     static_cast<unsigned>(cfg.seeds.size()));
  if (jobs < 1) jobs = 1;
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < jobs; ++t) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  return results;
}

double mean_metric(const std::vector<SeedResult>& rs, const std::string& key) {
  double sum = 0.0;
  for (const SeedResult& r : rs) sum += r.metrics.at(key);
  return sum / static_cast<double>(rs.size());
}

const Variant kVariants[3] = {Variant::Recon, Variant::Ipsundrum,
                              Variant::IpsundrumAffect};

// ---------------------------------------------------------------------------

void criterion_1_lesion_noop() {
  RunConfig cfg = RunConfig::defaults_for(Variant::Recon);
  auto results = over_seeds(cfg, [](const RunConfig& c, uint64_t s) {
    return run_lesion_seed(c, Variant::Recon, s);
  });
  double max_abs = 0.0;
  for (const SeedResult& r : results)
    max_abs = std::max(max_abs, std::abs(r.metrics.at("auc_drop")));
  report(1, "lesion no-op on baseline (drop exactly 0 per seed)", max_abs == 0.0,
         "max |drop| = " + fmt(max_abs) + " over " +
             std::to_string(results.size()) + " seeds");
}

void criterion_2_causal_attribution() {
  bool pass = true;
  std::ostringstream detail;
  for (Variant v : {Variant::Ipsundrum, Variant::IpsundrumAffect}) {
    RunConfig cfg = RunConfig::defaults_for(v);
    auto results = over_seeds(cfg, [v](const RunConfig& c, uint64_t s) {
      return run_lesion_seed(c, v, s);
    });
    int over_half = 0;
    double min_pct = 1e9;
    for (const SeedResult& r : results) {
      double pct = r.metrics.at("drop_pct");
      if (pct > 50.0) ++over_half;
      min_pct = std::min(min_pct, pct);
    }
    double frac = static_cast<double>(over_half) /
                  static_cast<double>(results.size());
    pass &= frac >= 0.9;
    detail << to_string(v) << ": " << over_half << "/" << results.size()
           << " seeds > 50% (min " << fmt(min_pct) << "%); ";
  }
  report(2, "lesion at t=3 cuts >50% of post-stimulus AUC", pass, detail.str());
}

void criterion_3_pain_dissociation() {
  double mean_tail[3] = {0, 0, 0};
  bool auc_ok = true, half_life_ok = true;
  std::ostringstream detail;
  for (int i = 0; i < 3; ++i) {
    Variant v = kVariants[i];
    RunConfig cfg = RunConfig::defaults_for(v);
    auto results = over_seeds(cfg, [v](const RunConfig& c, uint64_t s) {
      return run_pain_seed(c, v, s);
    });
    for (const SeedResult& r : results) {
      double auc = r.metrics.at("auc");
      if (v == Variant::Recon)
        auc_ok &= auc < 1e-9;
      else
        auc_ok &= auc > 0.0;
      half_life_ok &= r.metrics.at("half_life") == 0.0;
    }
    mean_tail[i] = mean_metric(results, "tail_duration");
    detail << to_string(v) << ": auc " << fmt(mean_metric(results, "auc"))
           << ", tail " << fmt(mean_tail[i]) << "; ";
  }
  bool tail_ok = mean_tail[2] > mean_tail[0] && mean_tail[2] > mean_tail[1];
  report(3, "pain-tail dissociation (AUC direction, half-life 0, caution tail)",
         auc_ok && half_life_ok && tail_ok, detail.str());
}

void criterion_4_familiarity() {
  double delta[3] = {0, 0, 0};
  double probe_v_s = 0, probe_v_d = 0, probe_a_s = 0, probe_a_d = 0;
  std::ostringstream detail;
  for (int i = 0; i < 3; ++i) {
    Variant v = kVariants[i];
    RunConfig cfg = RunConfig::defaults_for(v);
    cfg.familiarity.side_bias_control = false;  // criterion needs headline side
    auto results = over_seeds(cfg, [v](const RunConfig& c, uint64_t s) {
      return run_familiarity_seed(c, v, s);
    });
    delta[i] = mean_metric(results, "delta_scenic_entry");
    if (v == Variant::IpsundrumAffect) {
      probe_v_s = mean_metric(results, "probe_valence_scenic");
      probe_v_d = mean_metric(results, "probe_valence_dull");
      probe_a_s = mean_metric(results, "probe_arousal_scenic");
      probe_a_d = mean_metric(results, "probe_arousal_dull");
    }
    detail << to_string(v) << ": delta " << fmt(delta[i]) << "; ";
  }
  bool sensitive = delta[0] > 0.0 && delta[1] > 0.0;
  bool stable = std::abs(delta[2]) < 0.5 * delta[0];
  bool probe = probe_v_s > probe_v_d && probe_a_s < probe_a_d;
  detail << "probe v " << fmt(probe_v_s) << " vs " << fmt(probe_v_d) << ", a "
         << fmt(probe_a_s) << " vs " << fmt(probe_a_d);
  report(4, "familiarity dissociation (novelty-sensitive vs stable + probe)",
         sensitive && stable && probe, detail.str());
}

void criterion_5_play() {
  const double limit = std::log2(3.0) - 0.3;
  double entropy[3], dwell[3], scans[3];
  std::ostringstream detail;
  for (int i = 0; i < 3; ++i) {
    Variant v = kVariants[i];
    RunConfig cfg = RunConfig::defaults_for(v);
    auto results = over_seeds(cfg, [v](const RunConfig& c, uint64_t s) {
      return run_play_seed(c, v, s);
    });
    entropy[i] = mean_metric(results, "action_entropy");
    dwell[i] = mean_metric(results, "dwell_p90");
    scans[i] = mean_metric(results, "scan_events");
  }
  RunConfig rcfg = RunConfig::defaults_for(Variant::Recon);
  auto random_results = over_seeds(rcfg, [](const RunConfig& c, uint64_t s) {
    return run_play_random_seed(c, s);
  });
  double random_entropy = mean_metric(random_results, "action_entropy");
  double random_dwell = mean_metric(random_results, "dwell_p90");

  bool entropy_ok = entropy[0] < limit && entropy[1] < limit && entropy[2] < limit;
  bool random_ok = std::abs(random_entropy - std::log2(3.0)) <= 0.05;
  bool dwell_ok = dwell[0] <= random_dwell && dwell[1] <= random_dwell &&
                  dwell[2] <= random_dwell;
  bool scan_ok = scans[2] > scans[0];
  detail << "entropy " << fmt(entropy[0]) << "/" << fmt(entropy[1]) << "/"
         << fmt(entropy[2]) << " vs random " << fmt(random_entropy) << " (limit "
         << fmt(limit) << "); dwell " << fmt(dwell[0]) << "/" << fmt(dwell[1])
         << "/" << fmt(dwell[2]) << " vs " << fmt(random_dwell) << "; scans "
         << fmt(scans[0]) << "/" << fmt(scans[1]) << "/" << fmt(scans[2]);
  report(5, "play sanity (structured, not random dithering)",
         entropy_ok && random_ok && dwell_ok && scan_ok, detail.str());
}

// Independent brute-force reading of the six update equations, long-hand.
struct NaiveOut {
  double ns, x, m, ne, e, fat, alpha;
};

NaiveOut naive_step(double input, double e_prev, double x_prev, double ne_prev,
                    double fat_prev, const IpsundrumParams& p, bool cut,
                    bool bypass) {
  double eprev = cut ? 0.0 : e_prev;
  double pi = cut ? 0.0 : p.pi;
  double d = bypass ? 0.0 : p.d;
  double feedback = pi * eprev;
  if (p.divisive_norm_k > 0.0) feedback = feedback / (1.0 + p.divisive_norm_k * eprev);
  double drive = input + feedback + p.b - fat_prev;
  double ns;
  if (p.f == Nonlinearity::Sigmoid)
    ns = 1.0 / (1.0 + std::exp(-p.sigmoid_slope * (drive - p.sigmoid_midpoint)));
  else
    ns = drive;
  if (ns < 0.0) ns = 0.0;
  if (ns > 1.0) ns = 1.0;
  double x = d * x_prev + (1.0 - d) * ns;
  double m = p.h * x;
  if (m < 0.0) m = 0.0;
  if (m > 1.0) m = 1.0;
  double ne = p.d_e * ne_prev + (1.0 - p.d_e) * m;
  double e = p.g_eff * m;
  if (e < 0.0) e = 0.0;
  if (e > 1.0) e = 1.0;
  double fat = p.fatigue_rate * m + (1.0 - p.fatigue_rate) * fat_prev;
  double alpha = d + (1.0 - d) * (p.g_eff * p.h * pi);
  return {ns, x, m, ne, e, fat, alpha};
}

void criterion_6_recurrence_oracle() {
  Rng rng(20240611);
  double max_err = 0.0;
  bool alpha_exact = true;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) {
    IpsundrumParams p;
    p.pi = rng.uniform01() * 2.0;
    p.b = rng.uniform01();
    p.d = rng.uniform01() * 0.99;
    p.h = 0.05 + rng.uniform01() * 1.95;
    p.g_eff = rng.uniform01() * 1.5;
    p.d_e = rng.uniform01() * 0.99;
    p.f = rng.bounded(2) ? Nonlinearity::Sigmoid : Nonlinearity::Linear;
    p.sigmoid_slope = 1.0 + rng.uniform01() * 7.0;
    p.sigmoid_midpoint = rng.uniform01();
    p.fatigue_rate = rng.uniform01();
    p.divisive_norm_k = rng.bounded(2) ? rng.uniform01() : 0.0;

    IpsundrumState state;
    state.e = rng.uniform01();
    state.x = rng.uniform01();
    state.ne = rng.uniform01();
    state.fatigue_acc = rng.uniform01() * 0.5;
    double input = rng.uniform01() * 2.0 - 1.0;
    LesionFlags flags{rng.bounded(2) == 1, rng.bounded(2) == 1};

    StepOutput got = ipsundrum_step(input, state, p, flags);
    NaiveOut want = naive_step(input, state.e, state.x, state.ne,
                               state.fatigue_acc, p, flags.cut_feedback,
                               flags.bypass_integration);

    max_err = std::max(max_err, std::abs(got.ns - want.ns));
    max_err = std::max(max_err, std::abs(got.state.x - want.x));
    max_err = std::max(max_err, std::abs(got.m - want.m));
    max_err = std::max(max_err, std::abs(got.state.ne - want.ne));
    max_err = std::max(max_err, std::abs(got.state.e - want.e));
    max_err = std::max(max_err, std::abs(got.state.fatigue_acc - want.fat));
    alpha_exact &= got.alpha_eff == want.alpha;
  }
  report(6, "recurrence oracle (brute-force equations, 1e4 draws)",
         max_err <= 1e-12 && alpha_exact,
         "max |err| = " + fmt(max_err) + ", alpha exact = " +
             (alpha_exact ? "yes" : "no"));
}

void criterion_7_forward_model_fidelity() {
  bool pass = true;
  std::ostringstream detail;
  for (Variant v : {Variant::Ipsundrum, Variant::IpsundrumAffect}) {
    RunConfig cfg = RunConfig::defaults_for(v);
    WorldSpec world = grid_world(cfg.grid);
    ModelParams params = cfg.model_params();
    VisitationMemory memory(world.rows, world.cols);
    EpisodeOptions opts;
    opts.weights = cfg.policy;
    opts.rollout.horizon = cfg.horizon;
    opts.rollout.progress_enabled = true;
    Rng rng(derive_seed(3, "fidelity", to_string(v)));
    EpisodeResult ep = run_episode(world, v, params, opts, memory, rng);

    // Replay the logged inputs through the planner's internal-update path;
    // every value must be bit-identical to the online trace.
    InternalState replay;
    replay.aff.bb = params.affect.bb0;
    int mismatches = 0;
    for (const LogRow& row : ep.log.rows) {
      LesionFlags flags{row.cut_feedback, row.bypass_integration};
      InternalOutputs outs = advance_internal(v, row.input, replay, params, flags);
      if (outs.ns != row.ns || outs.ne != row.ne || outs.alpha_eff != row.alpha_eff)
        ++mismatches;
      if (affect_enabled(v) && (outs.nv != row.nv || outs.na != row.na))
        ++mismatches;
    }
    pass &= mismatches == 0;
    detail << to_string(v) << ": " << mismatches << " mismatches over "
           << ep.log.rows.size() << " steps; ";
  }
  report(7, "forward-model fidelity (bit-identical replay)", pass, detail.str());
}

void criterion_8_determinism() {
  fs::path base = fs::temp_directory_path() / "reconips_acceptance";
  fs::remove_all(base);
  std::vector<Variant> variants = {Variant::Recon, Variant::Ipsundrum,
                                   Variant::IpsundrumAffect};
  std::vector<std::string> assays = {"lesion", "play"};

  auto run_tree = [&](const fs::path& dir, int jobs) {
    for (Variant v : variants) {
      RunConfig cfg = RunConfig::defaults_for(v);
      cfg.seeds = {0, 1, 2, 3, 4, 5};
      cfg.jobs = jobs;
      cfg.traces = true;
      cfg.pain.post_steps = 60;
      cfg.lesion.window = 60;
      run_all(cfg, assays, {v}, dir);
    }
  };
  run_tree(base / "serial_a", 1);
  run_tree(base / "serial_b", 1);
  run_tree(base / "parallel", 4);

  auto rerun_diff = diff_trees(base / "serial_a", base / "serial_b");
  auto jobs_diff = diff_trees(base / "serial_a", base / "parallel");
  report(8, "determinism and --jobs equivalence (byte-identical trees)",
         rerun_diff.empty() && jobs_diff.empty(),
         "rerun diffs: " + std::to_string(rerun_diff.size()) +
             ", jobs diffs: " + std::to_string(jobs_diff.size()));
  fs::remove_all(base);
}

void criterion_9_bootstrap() {
  SeedSeries two{"m", {{0, 0.0}, {1, 1.0}}};
  Rng rng(99);
  BootstrapResult b = bootstrap_ci(two, 2000, 0.95, rng);
  bool lattice = (b.ci_low == 0.0 || b.ci_low == 0.5 || b.ci_low == 1.0) &&
                 (b.ci_high == 0.0 || b.ci_high == 0.5 || b.ci_high == 1.0);
  bool mean_ok = b.mean == 0.5;

  SeedSeries flat{"m", {{0, 2.5}, {1, 2.5}, {2, 2.5}}};
  Rng rng2(7);
  BootstrapResult d = bootstrap_ci(flat, 2000, 0.95, rng2);
  bool degenerate = d.mean == 2.5 && d.ci_low == 2.5 && d.ci_high == 2.5;

  report(9, "bootstrap correctness (lattice endpoints, degenerate collapse)",
         lattice && mean_ok && degenerate,
         "{0,1}: mean " + fmt(b.mean) + " ci [" + fmt(b.ci_low) + ", " +
             fmt(b.ci_high) + "]");
}

void criterion_10_goal_directed() {
  bool hazard_free_ok = true;
  std::ostringstream detail;
  for (Variant v : kVariants) {
    RunConfig cfg = RunConfig::defaults_for(v);
    cfg.grid.hazards = false;
    auto results = over_seeds(cfg, [v](const RunConfig& c, uint64_t s) {
      return run_goal_seed(c, v, s);
    });
    double success = mean_metric(results, "gridworld_success");
    hazard_free_ok &= success == 1.0;
    detail << to_string(v) << " success " << fmt(success) << "; ";
  }

  double hazards[3] = {0, 0, 0};
  for (int i = 0; i < 3; ++i) {
    Variant v = kVariants[i];
    RunConfig cfg = RunConfig::defaults_for(v);  // hazards on
    auto results = over_seeds(cfg, [v](const RunConfig& c, uint64_t s) {
      return run_goal_seed(c, v, s);
    });
    hazards[i] = mean_metric(results, "gridworld_hazards") +
                 mean_metric(results, "corridor_hazards");
  }
  bool safety_ok = hazards[2] <= hazards[0];
  detail << "hazard contacts recon " << fmt(hazards[0]) << " vs affect "
         << fmt(hazards[2]);
  report(10, "goal-directed competence and safety direction",
         hazard_free_ok && safety_ok, detail.str());
}

}  // namespace

int main() {
  std::printf("acceptance suite (20 seeds unless stated)\n");
  criterion_1_lesion_noop();
  criterion_2_causal_attribution();
  criterion_3_pain_dissociation();
  criterion_4_familiarity();
  criterion_5_play();
  criterion_6_recurrence_oracle();
  criterion_7_forward_model_fidelity();
  criterion_8_determinism();
  criterion_9_bootstrap();
  criterion_10_goal_directed();
  std::printf("%s: %d criterion(s) failed\n", failures == 0 ? "OK" : "FAILED",
              failures);
  return failures;
}
