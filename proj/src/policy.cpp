#include "reconips/policy.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace reconips {

PolicyWeights PolicyWeights::defaults_for(Variant v) {
  PolicyWeights w;
  switch (v) {
    case Variant::Recon:
      break;  // all affect/regulation weights stay zero
    case Variant::Ipsundrum:
      w.w_s = -0.8;
      break;
    case Variant::IpsundrumAffect:
      w.w_v = 2.0;
      w.w_a = -1.2;
      w.w_s = -0.8;
      w.w_bb = -0.4;
      break;
  }
  return w;
}

double novelty(const VisitationMemory& memory, Cell cell) {
  return 1.0 / (1.0 + static_cast<double>(memory.cross_visits(cell)));
}

double novelty_bonus(const VisitationMemory& memory, Cell cell, double w_nov,
                     bool curiosity_enabled) {
  return curiosity_enabled ? w_nov * novelty(memory, cell) : 0.0;
}

std::pair<double, double> predict_one_step_recon(const WorldSpec& world,
                                                 AgentPose pose, Action action,
                                                 const ModelParams& params,
                                                 Variant variant) {
  if (variant != Variant::Recon)
    throw std::logic_error("predict_one_step_recon on a recurrence variant");
  auto [next, events] = apply_action(world, pose, action);
  (void)events;
  Observation obs = observe(world, next, params.fusion);
  double input = fuse(obs, params.fusion, false);
  InternalState scratch;
  InternalOutputs outs =
      advance_internal(Variant::Recon, input, scratch, params, LesionFlags{});
  return {input, outs.ns};
}

namespace {

struct StepPred {
  AgentPose pose;
  double input = 0.0;
  double ns = 0.0;
  double nv = 0.0;
  double na = 0.0;
  double bb_err = 0.0;
  double touch = 0.0;
  double nov = 0.0;
  bool moved = false;
};

StepPred predict_step(const WorldSpec& world, AgentPose pose,
                      InternalState& internal, Variant variant,
                      const ModelParams& params, LesionFlags lesion,
                      Action action, const VisitationMemory& memory,
                      double sp) {
  StepPred p;
  auto [next, events] = apply_action(world, pose, action);
  (void)events;
  p.pose = next;
  p.moved = !(next.cell == pose.cell);
  Observation obs = observe(world, next, params.fusion);
  p.touch = obs.touch;
  p.input = fuse(obs, params.fusion, affect_enabled(variant));
  InternalOutputs outs = advance_internal(variant, p.input, internal, params, lesion);
  p.ns = outs.ns;
  if (affect_enabled(variant)) {
    p.nv = outs.nv;
    p.na = outs.na;
    p.bb_err = std::abs(internal.aff.bb - sp);
  }
  p.nov = novelty(memory, next.cell);
  return p;
}

RolloutSummary summary_of(const StepPred& p, Action first) {
  RolloutSummary s;
  s.first = first;
  s.steps = 1;
  s.mean_input = p.input;
  s.mean_ns = p.ns;
  s.mean_nv = p.nv;
  s.mean_na = p.na;
  s.mean_bb_err = p.bb_err;
  s.mean_touch = p.touch;
  s.mean_novelty = p.nov;
  s.first_moved = p.moved;
  s.terminal = p.pose;
  return s;
}

}  // namespace

double score_action(const RolloutSummary& pred, const PolicyWeights& weights,
                    const RolloutConfig& cfg, const ScoreContext& ctx,
                    AgentPose pose, Variant variant) {
  double score = 0.0;
  if (affect_enabled(variant))
    score += weights.w_v * pred.mean_nv + weights.w_a * pred.mean_na +
             weights.w_bb * pred.mean_bb_err;
  score += weights.w_s * pred.mean_ns;

  double change = std::abs(pred.mean_input - ctx.current_input);
  score += weights.w_epi * change;
  if (change < 0.01) score -= weights.w_lowchange;

  if (cfg.curiosity_enabled) score += weights.w_nov * pred.mean_novelty;

  if (cfg.progress_enabled && ctx.goal) {
    double before = std::abs(pose.cell.row - ctx.goal->row) +
                    std::abs(pose.cell.col - ctx.goal->col);
    double after = std::abs(pred.terminal.cell.row - ctx.goal->row) +
                   std::abs(pred.terminal.cell.col - ctx.goal->col);
    score += weights.w_prog * (before - after);
  }

  score -= weights.w_haz * pred.mean_touch;

  if (pred.first == Action::Forward) {
    score -= weights.cost_forward;
    score -= weights.w_caution * pred.mean_na;
    if (pred.first_moved) score += weights.w_fwdprior;
  } else {
    score -= weights.cost_turn;
  }
  return score;
}

RolloutSummary rollout(const WorldSpec& world, AgentPose pose,
                       const InternalState& internal, Variant variant,
                       const ModelParams& params, LesionFlags lesion,
                       Action action, const RolloutConfig& cfg,
                       const PolicyWeights& weights,
                       const VisitationMemory& memory, const ScoreContext& ctx) {
  if (cfg.horizon < 1) throw std::invalid_argument("horizon must be >= 1");

  RolloutSummary sum;
  sum.first = action;
  InternalState state = internal;
  AgentPose cur = pose;
  double cur_input = ctx.current_input;

  for (int k = 0; k < cfg.horizon; ++k) {
    Action a = action;
    StepPred pred;
    InternalState next_state = state;
    if (k == 0) {
      pred = predict_step(world, cur, next_state, variant, params, lesion, a,
                          memory, ctx.sp);
    } else {
      // Greedy one-step continuation under the same scoring.
      double best = -std::numeric_limits<double>::infinity();
      for (Action cand : kAllActions) {
        InternalState trial = state;
        StepPred p = predict_step(world, cur, trial, variant, params, lesion,
                                  cand, memory, ctx.sp);
        ScoreContext local{cur_input, ctx.sp, ctx.goal};
        double s = score_action(summary_of(p, cand), weights, cfg, local, cur,
                                variant);
        if (s > best) {
          best = s;
          a = cand;
          pred = p;
          next_state = trial;
        }
      }
    }
    state = next_state;
    if (k == 0) sum.first_moved = pred.moved;
    sum.mean_input += pred.input;
    sum.mean_ns += pred.ns;
    sum.mean_nv += pred.nv;
    sum.mean_na += pred.na;
    sum.mean_bb_err += pred.bb_err;
    sum.mean_touch += pred.touch;
    sum.mean_novelty += pred.nov;
    cur = pred.pose;
    cur_input = pred.input;
    ++sum.steps;
  }

  double n = static_cast<double>(sum.steps);
  sum.mean_input /= n;
  sum.mean_ns /= n;
  sum.mean_nv /= n;
  sum.mean_na /= n;
  sum.mean_bb_err /= n;
  sum.mean_touch /= n;
  sum.mean_novelty /= n;
  sum.terminal = cur;
  return sum;
}

SelectResult select_action(const WorldSpec& world, AgentPose pose,
                           const InternalState& internal, Variant variant,
                           const ModelParams& params, LesionFlags lesion,
                           const PolicyWeights& weights, const RolloutConfig& cfg,
                           const VisitationMemory& memory, const ScoreContext& ctx,
                           Rng& episode_rng) {
  std::vector<Action> order(kAllActions.begin(), kAllActions.end());
  episode_rng.shuffle(order);

  SelectResult result;
  double best = -std::numeric_limits<double>::infinity();
  bool have_best = false;
  for (Action a : order) {
    RolloutSummary pred = rollout(world, pose, internal, variant, params, lesion,
                                  a, cfg, weights, memory, ctx);
    double s = score_action(pred, weights, cfg, ctx, pose, variant);
    size_t i = static_cast<size_t>(a);
    result.scores[i] = s;
    result.predictions[i] = pred;
    if (!have_best || s > best) {  // ties keep the earlier shuffled candidate
      best = s;
      result.chosen = a;
      have_best = true;
    }
  }
  return result;
}

}  // namespace reconips
