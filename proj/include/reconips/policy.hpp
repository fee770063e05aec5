#pragma once

#include <array>
#include <optional>
#include <vector>

#include "reconips/variant.hpp"
#include "reconips/world.hpp"

namespace reconips {

// Variant-aligned short-horizon rollout planner: enumerate actions, predict
// sensory consequences with the variant's own forward model, score, select
// deterministically given the episode stream.

struct PolicyWeights {
  double w_v = 0.0;    // valence
  double w_a = 0.0;    // arousal
  double w_s = 0.0;    // salience
  double w_bb = 0.0;   // budget error
  double w_epi = 0.3;  // epistemic (predicted sensory change)
  double w_nov = 0.5;  // novelty bonus scale
  double w_prog = 0.5; // goal progress
  double w_haz = 0.10; // hazard-touch penalty
  double w_caution = 0.3;    // arousal-gated forward penalty
  double w_lowchange = 0.05; // low-change epistemic penalty
  double w_fwdprior = 0.02;  // mild forward prior (moving forward only)
  double cost_forward = 0.01;
  double cost_turn = 0.005;

  // Headline affect runs use (2.0, -1.2, -0.8, -0.4); the plain recurrence
  // variant keeps only the salience term; the baseline zeroes all four.
  static PolicyWeights defaults_for(Variant v);
};

struct RolloutConfig {
  int horizon = 5;
  bool curiosity_enabled = false;
  bool progress_enabled = false;
};

// Cell visit counts: the cross-episode map persists across episodes within an
// assay run and accumulates live; the per-episode map resets every episode.
class VisitationMemory {
 public:
  VisitationMemory(int rows, int cols)
      : rows_(rows), cols_(cols),
        cross_(static_cast<size_t>(rows * cols), 0),
        episode_(static_cast<size_t>(rows * cols), 0) {}

  void begin_episode() { std::fill(episode_.begin(), episode_.end(), 0); }
  void visit(Cell c) {
    ++cross_[index(c)];
    ++episode_[index(c)];
  }
  int cross_visits(Cell c) const { return cross_[index(c)]; }
  int episode_visits(Cell c) const { return episode_[index(c)]; }

 private:
  size_t index(Cell c) const { return static_cast<size_t>(c.row * cols_ + c.col); }
  int rows_, cols_;
  std::vector<int> cross_, episode_;
};

double novelty(const VisitationMemory& memory, Cell cell);
double novelty_bonus(const VisitationMemory& memory, Cell cell, double w_nov,
                     bool curiosity_enabled);

// Baseline one-step prediction: simulate the transition, fuse the predicted
// observation, return (input, ns) with no recurrence terms. Contract-errors
// when asked on a recurrence variant.
std::pair<double, double> predict_one_step_recon(const WorldSpec& world,
                                                 AgentPose pose, Action action,
                                                 const ModelParams& params,
                                                 Variant variant);

// Horizon-averaged internal variables predicted for a candidate action.
// The first step applies the candidate; the remaining steps follow a greedy
// one-step continuation under the same scoring.
struct RolloutSummary {
  Action first = Action::Forward;
  int steps = 0;
  double mean_input = 0.0;
  double mean_ns = 0.0;
  double mean_nv = 0.0;   // 0 when affect disabled
  double mean_na = 0.0;
  double mean_bb_err = 0.0;
  double mean_touch = 0.0;
  double mean_novelty = 0.0;
  bool first_moved = false;
  AgentPose terminal;
};

struct ScoreContext {
  double current_input = 0.0;
  double sp = 0.7;
  std::optional<Cell> goal;
};

RolloutSummary rollout(const WorldSpec& world, AgentPose pose,
                       const InternalState& internal, Variant variant,
                       const ModelParams& params, LesionFlags lesion,
                       Action action, const RolloutConfig& cfg,
                       const PolicyWeights& weights,
                       const VisitationMemory& memory, const ScoreContext& ctx);

double score_action(const RolloutSummary& pred, const PolicyWeights& weights,
                    const RolloutConfig& cfg, const ScoreContext& ctx,
                    AgentPose pose, Variant variant);

constexpr std::array<Action, 3> kAllActions{Action::Forward, Action::TurnLeft,
                                            Action::TurnRight};

struct SelectResult {
  Action chosen = Action::Forward;
  std::array<double, 3> scores{};            // indexed by Action value
  std::array<RolloutSummary, 3> predictions; // indexed by Action value
};

// Candidate order is shuffled with the episode stream; exact ties go to the
// first candidate in shuffled order, so selection is deterministic per seed.
SelectResult select_action(const WorldSpec& world, AgentPose pose,
                           const InternalState& internal, Variant variant,
                           const ModelParams& params, LesionFlags lesion,
                           const PolicyWeights& weights, const RolloutConfig& cfg,
                           const VisitationMemory& memory, const ScoreContext& ctx,
                           Rng& episode_rng);

}  // namespace reconips
