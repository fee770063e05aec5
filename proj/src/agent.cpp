#include "reconips/agent.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "reconips/metrics.hpp"

namespace reconips {

namespace {

Network make_substrate(Variant variant, const StageConfig& cfg) {
  return build_stage(variant == Variant::Recon ? Stage::B : Stage::D, cfg);
}

void drive_substrate(Network& net, double ns, double ne, double motor,
                     int rounds) {
  net.reset();
  net.set_activation(net.find("Ns"), ns);
  net.set_activation(net.find("Ne"), ne);
  net.set_activation(net.find("Nm"), motor);
  net.request_root(net.find("Root"));
  net.run(rounds);
}

bool cell_in(const std::vector<Cell>& lane, Cell c) {
  return std::find(lane.begin(), lane.end(), c) != lane.end();
}

// A committed lane entry: the new cell belongs to exactly one lane's cell set.
int lane_of(const CorridorMeta& meta, Cell c) {
  bool s = cell_in(meta.scenic_lane, c);
  bool d = cell_in(meta.dull_lane, c);
  if (s == d) return -1;
  return s ? 0 : 1;
}

void record_split_probe(SplitProbe& probe, const WorldSpec& world,
                        AgentPose pose, const InternalState& internal,
                        Variant variant, const ModelParams& params,
                        LesionFlags flags, const PolicyWeights& weights,
                        const RolloutConfig& cfg, const VisitationMemory& memory,
                        const ScoreContext& ctx) {
  const CorridorMeta& meta = *world.corridor;
  int side_col = meta.scenic_lane[1].col;
  Heading scenic_heading = side_col < meta.choice_point.col ? Heading::W : Heading::E;

  Action scenic_turn, dull_turn;
  if (turn(pose.heading, Action::TurnLeft) == scenic_heading) {
    scenic_turn = Action::TurnLeft;
    dull_turn = Action::TurnRight;
  } else if (turn(pose.heading, Action::TurnRight) == scenic_heading) {
    scenic_turn = Action::TurnRight;
    dull_turn = Action::TurnLeft;
  } else {
    return;  // not facing along the stem; no clean scenic/dull split
  }

  RolloutSummary scenic = rollout(world, pose, internal, variant, params, flags,
                                  scenic_turn, cfg, weights, memory, ctx);
  RolloutSummary dull = rollout(world, pose, internal, variant, params, flags,
                                dull_turn, cfg, weights, memory, ctx);
  probe.recorded = true;
  probe.nv_scenic = scenic.mean_nv;
  probe.nv_dull = dull.mean_nv;
  probe.na_scenic = scenic.mean_na;
  probe.na_dull = dull.mean_na;
}

}  // namespace

EpisodeResult run_episode(const WorldSpec& world, Variant variant,
                          const ModelParams& params, const EpisodeOptions& opts,
                          VisitationMemory& memory, Rng& rng) {
  EpisodeResult res;
  res.steps_to_goal = world.step_limit;

  InternalState internal;
  internal.aff.bb = params.affect.bb0;
  Network net = make_substrate(variant, opts.stage_cfg);

  AgentPose pose = world.start;
  memory.begin_episode();
  memory.visit(pose.cell);

  ScoreContext ctx;
  ctx.sp = params.affect.sp;
  ctx.goal = world.goal_cell();
  double current_input = 0.0;

  for (int t = 0; t < world.step_limit; ++t) {
    LesionFlags flags;
    if (t < static_cast<int>(opts.lesion_schedule.size()))
      flags = opts.lesion_schedule[static_cast<size_t>(t)];

    ctx.current_input = current_input;

    if (opts.split_probe && affect_enabled(variant) && world.corridor &&
        !res.probe.recorded && pose.cell == world.corridor->choice_point) {
      record_split_probe(res.probe, world, pose, internal, variant, params,
                         flags, opts.weights, opts.rollout, memory, ctx);
    }

    Action planned;
    SelectResult sel;
    if (opts.scripted) {
      if (t >= static_cast<int>(opts.scripted->size())) break;
      planned = (*opts.scripted)[static_cast<size_t>(t)];
    } else if (opts.random_policy) {
      planned = kAllActions[rng.bounded(3)];
    } else {
      sel = select_action(world, pose, internal, variant, params, flags,
                          opts.weights, opts.rollout, memory, ctx, rng);
      planned = sel.chosen;
    }

    EnvStep env = step_env(world, pose, planned, params.fusion);
    double input = fuse(env.obs, params.fusion, affect_enabled(variant));
    InternalOutputs outs = advance_internal(variant, input, internal, params,
                                            flags, &rng);
    if (variant == Variant::Recon) {
      double de = params.ipsundrum.d_e;
      internal.recon_ne = de * internal.recon_ne +
                          (1.0 - de) * motor_magnitude(static_cast<int>(planned));
      outs.ne = internal.recon_ne;
    }

    if (opts.run_network) {
      drive_substrate(net, outs.ns, outs.ne,
                      motor_magnitude(static_cast<int>(planned)),
                      opts.network_rounds);
    }

    memory.visit(env.pose.cell);
    if (env.events.hazard_contact) ++res.hazard_contacts;
    if (world.corridor && !res.entered_lane) {
      int lane = lane_of(*world.corridor, env.pose.cell);
      if (lane >= 0) {
        res.entered_lane = true;
        res.scenic_entry = lane == 0;
      }
    }

    LogRow row;
    row.t = t;
    row.pose = env.pose;
    row.action = static_cast<int>(planned);
    row.planned = planned;
    row.input = input;
    row.ns = outs.ns;
    row.ne = outs.ne;
    row.nv = outs.nv;
    row.na = outs.na;
    row.bb = affect_enabled(variant) ? internal.aff.bb
                                     : std::numeric_limits<double>::quiet_NaN();
    row.alpha_eff = outs.alpha_eff;
    row.cut_feedback = flags.cut_feedback;
    row.bypass_integration = flags.bypass_integration;
    row.hazard = env.events.hazard_contact;
    row.goal = env.events.goal_reached;
    row.scores = sel.scores;
    res.log.rows.push_back(row);

    pose = env.pose;
    current_input = input;
    res.steps = t + 1;
    if (env.events.goal_reached) {
      res.success = true;
      res.steps_to_goal = t + 1;
      break;
    }
  }

  const auto& tr = net.traversals();
  res.por_ret_deliveries = tr[static_cast<size_t>(LinkKind::Por)] +
                           tr[static_cast<size_t>(LinkKind::Ret)];
  if (res.por_ret_deliveries != 0)
    throw std::logic_error("por/ret links were traversed");
  return res;
}

ProbeResult run_probe_episode(const WorldSpec& world, Variant variant,
                              const ModelParams& params, const ProbeOptions& opts,
                              Rng& rng) {
  ProbeResult res;
  InternalState internal;
  internal.aff.bb = params.affect.bb0;
  Network net = make_substrate(variant, StageConfig{});
  VisitationMemory memory(world.rows, world.cols);

  AgentPose pose = world.start;
  memory.visit(pose.cell);
  res.contact_index = opts.settle_steps + opts.baseline_window;
  int total = res.contact_index + 1 + opts.post_steps;

  ScoreContext ctx;
  ctx.sp = params.affect.sp;
  double current_input = 0.0;

  for (int t = 0; t < total; ++t) {
    LesionFlags flags;
    if (opts.lesioned && t >= res.contact_index + opts.t_lesion)
      flags = opts.lesion_flags;

    ctx.current_input = current_input;
    SelectResult sel = select_action(world, pose, internal, variant, params,
                                     flags, opts.weights, opts.rollout, memory,
                                     ctx, rng);

    Observation obs = observe(world, pose, params.fusion);
    if (t == res.contact_index) obs.touch = 1.0;  // forced one-step contact
    double input = fuse(obs, params.fusion, affect_enabled(variant));
    InternalOutputs outs = advance_internal(variant, input, internal, params,
                                            flags, &rng);
    if (variant == Variant::Recon) outs.ne = internal.recon_ne;

    drive_substrate(net, outs.ns, outs.ne, 0.0, 8);

    res.ns.push_back(outs.ns);
    if (t > res.contact_index) res.planned_post.push_back(sel.chosen);

    LogRow row;
    row.t = t;
    row.pose = pose;
    row.action = -1;  // movement frozen
    row.planned = sel.chosen;
    row.input = input;
    row.ns = outs.ns;
    row.ne = outs.ne;
    row.nv = outs.nv;
    row.na = outs.na;
    row.bb = affect_enabled(variant) ? internal.aff.bb
                                     : std::numeric_limits<double>::quiet_NaN();
    row.alpha_eff = outs.alpha_eff;
    row.cut_feedback = flags.cut_feedback;
    row.bypass_integration = flags.bypass_integration;
    row.hazard = t == res.contact_index;
    row.scores = sel.scores;
    res.log.rows.push_back(row);

    current_input = input;
  }

  size_t contact = static_cast<size_t>(res.contact_index);
  res.baseline = mean_of(res.ns, contact - static_cast<size_t>(opts.baseline_window),
                         contact);
  size_t post_begin = contact + 1;
  size_t post_end = post_begin + static_cast<size_t>(opts.post_steps);
  res.auc = auc_above_baseline(res.ns, res.baseline, post_begin, post_end);
  res.half_life = peak_half_life(res.ns, contact, res.baseline, post_begin, post_end);
  res.tail_duration = turn_rate_tail(res.planned_post);
  return res;
}

}  // namespace reconips
