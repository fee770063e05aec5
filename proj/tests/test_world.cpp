#include <doctest.h>

#include <queue>
#include <set>

#include "reconips/world.hpp"

using namespace reconips;

TEST_CASE("turns rotate in place and walls block forward moves") {
  WorldSpec w = grid_world(GridConfig{});
  AgentPose pose{{1, 1}, Heading::N};
  auto [turned, ev1] = apply_action(w, pose, Action::TurnLeft);
  CHECK(turned.heading == Heading::W);
  CHECK(turned.cell == pose.cell);

  auto [blocked, ev2] = apply_action(w, pose, Action::Forward);  // row 0 is wall
  CHECK(blocked.cell == pose.cell);
  CHECK(blocked.heading == Heading::N);

  pose.heading = Heading::E;
  auto [moved, ev3] = apply_action(w, pose, Action::Forward);
  CHECK(moved.cell == Cell{1, 2});
}

TEST_CASE("stepping onto a hazard raises the touch channel and the event") {
  WorldSpec w = grid_world(GridConfig{});
  Cell hazard = w.hazard_cells().front();
  AgentPose pose{{hazard.row, hazard.col - 1}, Heading::E};
  EnvStep step = step_env(w, pose, Action::Forward, FusionWeights{});
  CHECK(step.events.hazard_contact);
  CHECK(step.obs.touch == 1.0);
}

TEST_CASE("transitions are deterministic") {
  WorldSpec w = corridor_world(CorridorConfig{});
  AgentPose pose = w.start;
  for (Action a : {Action::Forward, Action::TurnLeft, Action::Forward}) {
    auto r1 = apply_action(w, pose, a);
    auto r2 = apply_action(w, pose, a);
    CHECK(r1.first == r2.first);
    pose = r1.first;
  }
}

TEST_CASE("corridor has one choice point and symmetric lanes") {
  WorldSpec w = corridor_world(CorridorConfig{});
  REQUIRE(w.corridor.has_value());
  const CorridorMeta& m = *w.corridor;
  CHECK(m.scenic_lane.size() == m.dull_lane.size());
  CHECK(w.at(m.choice_point) == CellTag::Empty);

  // Equally safe: no hazards anywhere near either lane.
  CHECK(w.hazard_cells().empty());

  // Scripted lane-following rollouts reach the goal in the same number of steps.
  auto run_walk = [&](bool scenic) {
    std::vector<Action> walk = corridor_lane_walk(w, scenic);
    AgentPose pose = w.start;
    int steps = 0;
    bool reached = false;
    for (Action a : walk) {
      auto [next, events] = apply_action(w, pose, a);
      pose = next;
      ++steps;
      if (events.goal_reached) {
        reached = true;
        break;
      }
    }
    CHECK(reached);
    return steps;
  };
  CHECK(run_walk(true) == run_walk(false));
}

TEST_CASE("swapping sides mirrors the lane metadata consistently") {
  CorridorConfig left_cfg;
  left_cfg.scenic_left = true;
  CorridorConfig right_cfg;
  right_cfg.scenic_left = false;
  WorldSpec left = corridor_world(left_cfg);
  WorldSpec right = corridor_world(right_cfg);
  CHECK(left.corridor->scenic_lane == right.corridor->dull_lane);
  CHECK(left.corridor->dull_lane == right.corridor->scenic_lane);
  // Scenic texture follows the swap.
  bool left_has_scenic = false;
  for (const Cell& c : left.corridor->scenic_lane)
    left_has_scenic |= left.at(c) == CellTag::Scenic;
  bool right_has_scenic = false;
  for (const Cell& c : right.corridor->scenic_lane)
    right_has_scenic |= right.at(c) == CellTag::Scenic;
  CHECK(left_has_scenic);
  CHECK(right_has_scenic);
}

TEST_CASE("constant scenic texture degenerates the scenic lane to dull") {
  CorridorConfig cfg;
  cfg.scenic_varying = false;
  WorldSpec w = corridor_world(cfg);
  for (const Cell& c : w.corridor->scenic_lane) CHECK(w.at(c) == CellTag::Dull);
}

TEST_CASE("play world is reward-free with a 200-step limit") {
  WorldSpec w = play_world(PlayConfig{});
  CHECK(w.step_limit == 200);
  CHECK_FALSE(w.goal_cell().has_value());
  CHECK(w.hazard_cells().empty());
  // No event can ever fire.
  for (int r = 0; r < w.rows; ++r)
    for (int c = 0; c < w.cols; ++c) {
      CellTag t = w.at({r, c});
      CHECK(t != CellTag::Goal);
      CHECK(t != CellTag::Hazard);
    }
}

TEST_CASE("hazard-free grid world cannot produce contacts") {
  GridConfig cfg;
  cfg.hazards = false;
  WorldSpec w = grid_world(cfg);
  CHECK(w.hazard_cells().empty());
}

TEST_CASE("default grid places a hazard on a minimal start-goal path") {
  WorldSpec w = grid_world(GridConfig{});
  REQUIRE_FALSE(w.hazard_cells().empty());
  Cell goal = *w.goal_cell();

  // BFS distances treating hazards as passable.
  auto bfs = [&](Cell from) {
    std::vector<int> dist(static_cast<size_t>(w.rows * w.cols), -1);
    std::queue<Cell> q;
    dist[static_cast<size_t>(from.row * w.cols + from.col)] = 0;
    q.push(from);
    while (!q.empty()) {
      Cell c = q.front();
      q.pop();
      int d = dist[static_cast<size_t>(c.row * w.cols + c.col)];
      for (Heading h : {Heading::N, Heading::E, Heading::S, Heading::W}) {
        Cell n = forward_cell(c, h);
        if (!w.passable(n)) continue;
        int& slot = dist[static_cast<size_t>(n.row * w.cols + n.col)];
        if (slot < 0) {
          slot = d + 1;
          q.push(n);
        }
      }
    }
    return dist;
  };
  auto from_start = bfs(w.start.cell);
  auto from_goal = bfs(goal);
  int shortest = from_start[static_cast<size_t>(goal.row * w.cols + goal.col)];
  REQUIRE(shortest > 0);
  bool on_minimal_path = false;
  for (const Cell& h : w.hazard_cells()) {
    int ds = from_start[static_cast<size_t>(h.row * w.cols + h.col)];
    int dg = from_goal[static_cast<size_t>(h.row * w.cols + h.col)];
    if (ds >= 0 && dg >= 0 && ds + dg == shortest) on_minimal_path = true;
  }
  CHECK(on_minimal_path);
}

TEST_CASE("vision cone length matches the configured depth with occlusion") {
  WorldSpec w = grid_world(GridConfig{});
  FusionWeights fw;
  AgentPose pose{{1, 1}, Heading::N};  // wall directly ahead
  Observation obs = observe(w, pose, fw);
  REQUIRE(obs.vision.size() == static_cast<size_t>(fw.cone_depth));
  CHECK(obs.vision[0].tag == ConeTag::Wall);
  CHECK(obs.vision[1].tag == ConeTag::Wall);  // occluded past the wall
  CHECK(obs.vision[2].tag == ConeTag::Wall);
}

TEST_CASE("world specs round-trip through the text format") {
  for (WorldSpec w : {corridor_world(CorridorConfig{}), grid_world(GridConfig{}),
                      play_world(PlayConfig{})}) {
    std::string text = dump_world(w);
    WorldSpec back = parse_world(text);
    CHECK(dump_world(back) == text);
    CHECK(back.rows == w.rows);
    CHECK(back.start == w.start);
    CHECK(back.cells == w.cells);
    if (w.corridor) {
      REQUIRE(back.corridor.has_value());
      CHECK(back.corridor->scenic_lane == w.corridor->scenic_lane);
      CHECK(back.corridor->barrier_start_row == w.corridor->barrier_start_row);
    }
  }
}
