#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "reconips/sensory.hpp"

namespace reconips {

// Deterministic gridworlds: a corridor with a scenic/dull two-lane choice, a
// hazard gridworld with one goal, and a reward-free neutral play arena.

enum class CellTag { Empty, Wall, Hazard, Goal, Scenic, Dull };
enum class Heading { N, E, S, W };
enum class Action { Forward, TurnLeft, TurnRight };

const char* to_string(Heading h);
const char* to_string(Action a);
Heading heading_from_char(char c);
Action action_from_string(std::string_view s);

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

struct AgentPose {
  Cell cell;
  Heading heading = Heading::N;
  bool operator==(const AgentPose&) const = default;
};

struct StepEvents {
  bool hazard_contact = false;
  bool goal_reached = false;
};

struct CorridorMeta {
  std::vector<Cell> scenic_lane;
  std::vector<Cell> dull_lane;
  Cell choice_point;
  int barrier_start_row = 0;
  bool scenic_left = true;
};

struct WorldSpec {
  int rows = 0;
  int cols = 0;
  std::vector<CellTag> cells;
  AgentPose start;
  int step_limit = 0;
  std::optional<CorridorMeta> corridor;

  CellTag at(Cell c) const { return cells[static_cast<size_t>(c.row * cols + c.col)]; }
  bool in_bounds(Cell c) const {
    return c.row >= 0 && c.row < rows && c.col >= 0 && c.col < cols;
  }
  bool passable(Cell c) const { return in_bounds(c) && at(c) != CellTag::Wall; }
  std::optional<Cell> goal_cell() const;
  std::vector<Cell> hazard_cells() const;
};

struct CorridorConfig {
  int lane_len = 9;
  bool scenic_left = true;
  bool scenic_varying = true;  // false degenerates the scenic lane to dull
  int step_limit = 60;
};

struct GridConfig {
  int rows = 11;
  int cols = 11;
  bool hazards = true;
  int step_limit = 120;
};

struct PlayConfig {
  int rows = 9;
  int cols = 9;
  int step_limit = 200;
};

WorldSpec corridor_world(const CorridorConfig& cfg);
WorldSpec grid_world(const GridConfig& cfg);
WorldSpec play_world(const PlayConfig& cfg);

Cell forward_cell(Cell c, Heading h);
Heading turn(Heading h, Action a);

// BFS step distances from every passable cell to the goal (row-major,
// -1 where unreachable or when the world has no goal).
std::vector<int> goal_distance_map(const WorldSpec& world);

// Pure transition: turns stay in place, forward into a wall keeps the cell.
std::pair<AgentPose, StepEvents> apply_action(const WorldSpec& world,
                                              AgentPose pose, Action action);

// Touch/smell/vision bundle for a pose. The cone is cone_depth cells long;
// cells past an occluding wall are reported as walls.
Observation observe(const WorldSpec& world, AgentPose pose,
                    const FusionWeights& weights);

struct EnvStep {
  AgentPose pose;
  Observation obs;
  StepEvents events;
};
EnvStep step_env(const WorldSpec& world, AgentPose pose, Action action,
                 const FusionWeights& weights);

// One character per cell with the legend in the header; corridor lane
// metadata rides along as coordinate lists.
std::string dump_world(const WorldSpec& world);
WorldSpec parse_world(std::string_view text);

// Waypoint actions walking the start -> lane -> goal path of a corridor lane
// (scenic = true picks the scenic lane).
std::vector<Action> corridor_lane_walk(const WorldSpec& world, bool scenic);

}  // namespace reconips
