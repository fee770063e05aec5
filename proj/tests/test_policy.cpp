#include <doctest.h>

#include <stdexcept>

#include "reconips/policy.hpp"

using namespace reconips;

TEST_CASE("per-variant default weights gate the affect terms") {
  PolicyWeights recon = PolicyWeights::defaults_for(Variant::Recon);
  CHECK(recon.w_v == 0.0);
  CHECK(recon.w_a == 0.0);
  CHECK(recon.w_s == 0.0);
  CHECK(recon.w_bb == 0.0);

  PolicyWeights hb = PolicyWeights::defaults_for(Variant::IpsundrumAffect);
  CHECK(hb.w_v == 2.0);
  CHECK(hb.w_a == -1.2);
  CHECK(hb.w_s == -0.8);
  CHECK(hb.w_bb == -0.4);
  CHECK(hb.w_haz == doctest::Approx(0.10));
}

TEST_CASE("novelty follows the visit-count formula") {
  VisitationMemory memory(5, 5);
  Cell c{2, 2};
  CHECK(novelty(memory, c) == 1.0);
  memory.visit(c);
  memory.visit(c);
  memory.visit(c);
  CHECK(novelty(memory, c) == doctest::Approx(0.25));
  CHECK(novelty_bonus(memory, c, 0.5, true) == doctest::Approx(0.125));
  CHECK(novelty_bonus(memory, c, 0.5, false) == 0.0);
}

TEST_CASE("visitation memory separates per-episode and cross-episode counts") {
  VisitationMemory memory(5, 5);
  Cell c{1, 1};
  memory.visit(c);
  memory.begin_episode();
  memory.visit(c);
  CHECK(memory.cross_visits(c) == 2);
  CHECK(memory.episode_visits(c) == 1);
}

TEST_CASE("baseline one-step prediction has no recurrence terms") {
  WorldSpec w = play_world(PlayConfig{});
  ModelParams params;
  auto [input, ns] = predict_one_step_recon(w, w.start, Action::Forward, params,
                                            Variant::Recon);
  CHECK(input == 0.0);  // neutral arena
  CHECK(ns == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(predict_one_step_recon(w, w.start, Action::Forward, params,
                                         Variant::Ipsundrum),
                  std::logic_error);
}

TEST_CASE("a one-step prediction onto a hazard is positive evidence") {
  WorldSpec w = grid_world(GridConfig{});
  Cell hazard = w.hazard_cells().front();
  AgentPose pose{{hazard.row, hazard.col - 1}, Heading::E};
  ModelParams params;
  auto [input, ns] = predict_one_step_recon(w, pose, Action::Forward, params,
                                            Variant::Recon);
  CHECK(input > 0.0);
  CHECK(ns > 0.5);
}

TEST_CASE("score terms match hand-substituted values") {
  RolloutConfig cfg;
  ScoreContext ctx;
  AgentPose pose{{1, 1}, Heading::E};

  SUBCASE("all weights zero scores zero for every candidate") {
    PolicyWeights w{};
    w.w_epi = 0;
    w.w_nov = 0;
    w.w_prog = 0;
    w.w_haz = 0;
    w.w_caution = 0;
    w.w_lowchange = 0;
    w.w_fwdprior = 0;
    w.cost_forward = 0;
    w.cost_turn = 0;
    for (Action a : kAllActions) {
      RolloutSummary pred;
      pred.first = a;
      CHECK(score_action(pred, w, cfg, ctx, pose, Variant::Recon) == 0.0);
    }
  }

  SUBCASE("affect quad substitution") {
    PolicyWeights w{};
    w.w_v = 2.0;
    w.w_a = -1.2;
    w.w_s = -0.8;
    w.w_bb = -0.4;
    w.w_epi = 0;
    w.w_nov = 0;
    w.w_prog = 0;
    w.w_haz = 0;
    w.w_caution = 0;
    w.w_lowchange = 0;
    w.w_fwdprior = 0;
    w.cost_forward = 0;
    w.cost_turn = 0;
    RolloutSummary pred;
    pred.first = Action::TurnLeft;
    pred.mean_nv = 0.8;
    pred.mean_na = 0.2;
    pred.mean_ns = 0.3;
    pred.mean_bb_err = 0.1;  // |bb - sp| with bb=0.6, sp=0.7
    double s = score_action(pred, w, cfg, ctx, pose, Variant::IpsundrumAffect);
    CHECK(s == doctest::Approx(1.08).epsilon(1e-12));
  }

  SUBCASE("predicted touch is a -0.10 penalty at default scale") {
    PolicyWeights w{};
    w.w_epi = 0;
    w.w_nov = 0;
    w.w_prog = 0;
    w.w_caution = 0;
    w.w_lowchange = 0;
    w.w_fwdprior = 0;
    w.cost_forward = 0;
    w.cost_turn = 0;
    RolloutSummary pred;
    pred.first = Action::Forward;
    pred.mean_touch = 1.0;
    double s = score_action(pred, w, cfg, ctx, pose, Variant::Recon);
    CHECK(s == doctest::Approx(-0.10).epsilon(1e-12));
  }
}

TEST_CASE("H=1 rollout equals the one-step prediction") {
  WorldSpec w = play_world(PlayConfig{});
  ModelParams params;
  VisitationMemory memory(w.rows, w.cols);
  RolloutConfig cfg;
  cfg.horizon = 1;
  ScoreContext ctx;
  PolicyWeights weights = PolicyWeights::defaults_for(Variant::Recon);

  RolloutSummary one = rollout(w, w.start, InternalState{}, Variant::Recon, params,
                               LesionFlags{}, Action::Forward, cfg, weights,
                               memory, ctx);
  auto [input, ns] = predict_one_step_recon(w, w.start, Action::Forward, params,
                                            Variant::Recon);
  CHECK(one.steps == 1);
  CHECK(one.mean_input == input);
  CHECK(one.mean_ns == ns);
  auto [pose_after, events] = apply_action(w, w.start, Action::Forward);
  CHECK(one.terminal == pose_after);
}

TEST_CASE("recurrence-variant rollouts replay bit-identically through the step") {
  WorldSpec w = play_world(PlayConfig{});
  ModelParams params;
  VisitationMemory memory(w.rows, w.cols);
  RolloutConfig cfg;
  cfg.horizon = 4;
  ScoreContext ctx;
  PolicyWeights weights = PolicyWeights::defaults_for(Variant::Ipsundrum);

  InternalState pulsed;
  pulsed.ips = ipsundrum_step(1.0, IpsundrumState{}, params.ipsundrum,
                              LesionFlags{})
                   .state;

  RolloutSummary pred = rollout(w, w.start, pulsed, Variant::Ipsundrum, params,
                                LesionFlags{}, Action::TurnLeft, cfg, weights,
                                memory, ctx);

  // The same pure step on the same inputs must reproduce the mean exactly.
  // Every step of the rollout in this arena sees input 0.
  InternalState replay = pulsed;
  double sum_ns = 0.0;
  for (int k = 0; k < cfg.horizon; ++k) {
    InternalOutputs outs =
        advance_internal(Variant::Ipsundrum, 0.0, replay, params, LesionFlags{});
    sum_ns += outs.ns;
  }
  CHECK(pred.mean_ns == sum_ns / cfg.horizon);
  CHECK(pred.mean_nv == 0.0);  // variant gating: no affect variables
  CHECK(pred.mean_na == 0.0);
}

TEST_CASE("selection is deterministic and ties follow the seeded shuffle") {
  WorldSpec w = play_world(PlayConfig{});
  ModelParams params;
  VisitationMemory memory(w.rows, w.cols);
  RolloutConfig cfg;
  cfg.horizon = 1;
  ScoreContext ctx;

  // Zero out everything so all candidates tie exactly.
  PolicyWeights zero{};
  zero.w_epi = 0;
  zero.w_nov = 0;
  zero.w_prog = 0;
  zero.w_haz = 0;
  zero.w_caution = 0;
  zero.w_lowchange = 0;
  zero.w_fwdprior = 0;
  zero.cost_forward = 0;
  zero.cost_turn = 0;

  uint64_t seed = 99;
  Rng r1(seed);
  SelectResult a = select_action(w, w.start, InternalState{}, Variant::Recon,
                                 params, LesionFlags{}, zero, cfg, memory, ctx, r1);
  Rng r2(seed);
  std::vector<Action> order(kAllActions.begin(), kAllActions.end());
  r2.shuffle(order);
  CHECK(a.chosen == order[0]);

  Rng r3(seed);
  SelectResult b = select_action(w, w.start, InternalState{}, Variant::Recon,
                                 params, LesionFlags{}, zero, cfg, memory, ctx, r3);
  CHECK(a.chosen == b.chosen);
  CHECK(a.scores == b.scores);
}

TEST_CASE("a uniform score shift leaves the chosen action unchanged") {
  // The low-change penalty applies equally to every candidate here, so it is
  // exactly a constant shift of all scores.
  WorldSpec w = play_world(PlayConfig{});
  ModelParams params;
  VisitationMemory memory(w.rows, w.cols);
  RolloutConfig cfg;
  cfg.horizon = 2;
  ScoreContext ctx;
  PolicyWeights base = PolicyWeights::defaults_for(Variant::Recon);
  base.w_lowchange = 0.0;
  PolicyWeights shifted = base;
  shifted.w_lowchange = 10.0;

  uint64_t seed = 4;
  Rng r1(seed), r2(seed);
  SelectResult a = select_action(w, w.start, InternalState{}, Variant::Recon,
                                 params, LesionFlags{}, base, cfg, memory, ctx, r1);
  SelectResult b = select_action(w, w.start, InternalState{}, Variant::Recon,
                                 params, LesionFlags{}, shifted, cfg, memory, ctx, r2);
  CHECK(a.chosen == b.chosen);
  for (size_t i = 0; i < 3; ++i)
    CHECK(b.scores[i] - a.scores[i] == doctest::Approx(-10.0));
}

TEST_CASE("a strictly dominant candidate wins regardless of the shuffle") {
  WorldSpec w = grid_world(GridConfig{});
  ModelParams params;
  VisitationMemory memory(w.rows, w.cols);
  RolloutConfig cfg;
  cfg.horizon = 1;
  cfg.progress_enabled = true;
  ScoreContext ctx;
  ctx.goal = w.goal_cell();
  PolicyWeights weights = PolicyWeights::defaults_for(Variant::Recon);

  // Heading east in the open grid: forward strictly improves goal distance.
  for (uint64_t seed = 0; seed < 8; ++seed) {
    Rng rng(seed);
    SelectResult r = select_action(w, w.start, InternalState{}, Variant::Recon,
                                   params, LesionFlags{}, weights, cfg, memory,
                                   ctx, rng);
    CHECK(r.chosen == Action::Forward);
  }
}
