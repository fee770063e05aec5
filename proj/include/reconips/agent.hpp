#pragma once

#include <array>
#include <vector>

#include "reconips/policy.hpp"
#include "reconips/recon.hpp"

namespace reconips {

// Per-step trace row; valence/arousal/budget are NaN (logged as empty fields)
// for non-affect variants.
struct LogRow {
  int t = 0;
  AgentPose pose;       // after the step
  int action = -1;      // executed action index; -1 when movement is frozen
  Action planned = Action::Forward;
  double input = 0.0;
  double ns = 0.0;
  double ne = 0.0;
  double nv = 0.0;
  double na = 0.0;
  double bb = 0.0;
  double alpha_eff = 0.0;
  bool cut_feedback = false;
  bool bypass_integration = false;
  bool hazard = false;
  bool goal = false;
  std::array<double, 3> scores{};  // candidate scores by action index
};

struct EpisodeLog {
  std::vector<LogRow> rows;
};

// Predicted valence/arousal for the scenic-turn vs dull-turn candidates,
// captured once when the agent stands at the corridor choice point.
struct SplitProbe {
  bool recorded = false;
  double nv_scenic = 0.0;
  double nv_dull = 0.0;
  double na_scenic = 0.0;
  double na_dull = 0.0;
};

struct EpisodeOptions {
  PolicyWeights weights;
  RolloutConfig rollout;
  std::vector<LesionFlags> lesion_schedule;       // empty = all sham
  const std::vector<Action>* scripted = nullptr;  // overrides the planner
  bool random_policy = false;                     // uniform-random actions
  bool split_probe = false;                       // corridor choice-point probe
  bool run_network = true;                        // drive the script substrate
  int network_rounds = 8;
  StageConfig stage_cfg;
};

struct EpisodeResult {
  EpisodeLog log;
  int steps = 0;
  bool success = false;
  int steps_to_goal = 0;  // step limit when the goal was not reached
  int hazard_contacts = 0;
  bool entered_lane = false;  // corridor: committed to exactly one lane
  bool scenic_entry = false;
  SplitProbe probe;
  long por_ret_deliveries = 0;
};

EpisodeResult run_episode(const WorldSpec& world, Variant variant,
                          const ModelParams& params, const EpisodeOptions& opts,
                          VisitationMemory& memory, Rng& rng);

// Pain-tail / lesion protocol: settle, record a baseline window, force one
// hazard contact, then hold the world and pose fixed while querying planned
// actions. Internal dynamics keep updating from the frozen observation.
struct ProbeOptions {
  PolicyWeights weights;
  RolloutConfig rollout;
  int settle_steps = 30;
  int baseline_window = 10;
  int post_steps = 150;
  bool lesioned = false;
  LesionFlags lesion_flags{true, true};
  int t_lesion = 3;  // steps after the forced contact
};

struct ProbeResult {
  EpisodeLog log;
  std::vector<double> ns;            // one value per step
  std::vector<Action> planned_post;  // planned actions in the post window
  int contact_index = 0;
  double baseline = 0.0;
  double auc = 0.0;       // above-baseline area over the post window
  int half_life = 0;      // peak-based, in post steps
  int tail_duration = 0;  // first sub-threshold turn-rate window
};

ProbeResult run_probe_episode(const WorldSpec& world, Variant variant,
                              const ModelParams& params, const ProbeOptions& opts,
                              Rng& rng);

}  // namespace reconips
