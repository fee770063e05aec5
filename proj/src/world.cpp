#include "reconips/world.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace reconips {

const char* to_string(Heading h) {
  switch (h) {
    case Heading::N: return "N";
    case Heading::E: return "E";
    case Heading::S: return "S";
    case Heading::W: return "W";
  }
  return "?";
}

const char* to_string(Action a) {
  switch (a) {
    case Action::Forward: return "forward";
    case Action::TurnLeft: return "turn_left";
    case Action::TurnRight: return "turn_right";
  }
  return "?";
}

Heading heading_from_char(char c) {
  switch (c) {
    case 'N': return Heading::N;
    case 'E': return Heading::E;
    case 'S': return Heading::S;
    case 'W': return Heading::W;
  }
  throw std::invalid_argument(std::string("bad heading: ") + c);
}

Action action_from_string(std::string_view s) {
  if (s == "forward") return Action::Forward;
  if (s == "turn_left") return Action::TurnLeft;
  if (s == "turn_right") return Action::TurnRight;
  throw std::invalid_argument("bad action: " + std::string(s));
}

std::optional<Cell> WorldSpec::goal_cell() const {
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (at({r, c}) == CellTag::Goal) return Cell{r, c};
  return std::nullopt;
}

std::vector<Cell> WorldSpec::hazard_cells() const {
  std::vector<Cell> out;
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (at({r, c}) == CellTag::Hazard) out.push_back({r, c});
  return out;
}

Cell forward_cell(Cell c, Heading h) {
  switch (h) {
    case Heading::N: return {c.row - 1, c.col};
    case Heading::E: return {c.row, c.col + 1};
    case Heading::S: return {c.row + 1, c.col};
    case Heading::W: return {c.row, c.col - 1};
  }
  return c;
}

Heading turn(Heading h, Action a) {
  int i = static_cast<int>(h);
  if (a == Action::TurnLeft) i = (i + 3) % 4;
  else if (a == Action::TurnRight) i = (i + 1) % 4;
  return static_cast<Heading>(i);
}

std::pair<AgentPose, StepEvents> apply_action(const WorldSpec& world,
                                              AgentPose pose, Action action) {
  AgentPose next = pose;
  if (action == Action::Forward) {
    Cell target = forward_cell(pose.cell, pose.heading);
    if (world.passable(target)) next.cell = target;
  } else {
    next.heading = turn(pose.heading, action);
  }
  StepEvents events;
  events.hazard_contact = world.at(next.cell) == CellTag::Hazard;
  events.goal_reached = world.at(next.cell) == CellTag::Goal;
  return {next, events};
}

static ConeTag cone_tag(CellTag t) {
  switch (t) {
    case CellTag::Empty: return ConeTag::Empty;
    case CellTag::Wall: return ConeTag::Wall;
    case CellTag::Hazard: return ConeTag::Hazard;
    case CellTag::Goal: return ConeTag::Goal;
    case CellTag::Scenic: return ConeTag::Scenic;
    case CellTag::Dull: return ConeTag::Dull;
  }
  return ConeTag::Empty;
}

Observation observe(const WorldSpec& world, AgentPose pose,
                    const FusionWeights& weights) {
  Observation obs;
  obs.touch = world.at(pose.cell) == CellTag::Hazard ? 1.0 : 0.0;

  int dmin = -1;
  for (const Cell& h : world.hazard_cells()) {
    int d = std::abs(h.row - pose.cell.row) + std::abs(h.col - pose.cell.col);
    if (dmin < 0 || d < dmin) dmin = d;
  }
  obs.smell = dmin < 0 ? 0.0 : 1.0 / (1.0 + static_cast<double>(dmin));

  obs.vision.reserve(static_cast<size_t>(weights.cone_depth));
  Cell c = pose.cell;
  bool occluded = false;
  for (int d = 1; d <= weights.cone_depth; ++d) {
    c = forward_cell(c, pose.heading);
    ConeTag tag = ConeTag::Wall;
    if (!occluded && world.in_bounds(c)) tag = cone_tag(world.at(c));
    if (tag == ConeTag::Wall) occluded = true;
    obs.vision.push_back({d, tag});
  }
  return obs;
}

EnvStep step_env(const WorldSpec& world, AgentPose pose, Action action,
                 const FusionWeights& weights) {
  auto [next, events] = apply_action(world, pose, action);
  return {next, observe(world, next, weights), events};
}

WorldSpec corridor_world(const CorridorConfig& cfg) {
  if (cfg.lane_len < 2) throw std::invalid_argument("lane_len must be >= 2");
  const int choice_row = 3;
  const int rejoin_row = choice_row + cfg.lane_len;
  WorldSpec w;
  w.rows = rejoin_row + 3;
  w.cols = 7;
  w.cells.assign(static_cast<size_t>(w.rows * w.cols), CellTag::Wall);
  auto set = [&](int r, int c, CellTag t) {
    w.cells[static_cast<size_t>(r * w.cols + c)] = t;
  };

  set(1, 3, CellTag::Empty);  // start
  set(2, 3, CellTag::Empty);  // stem
  for (int c = 1; c <= 5; ++c) set(choice_row, c, CellTag::Empty);
  for (int r = choice_row + 1; r <= rejoin_row; ++r) {
    set(r, 1, CellTag::Empty);
    set(r, 5, CellTag::Empty);
  }
  for (int c = 1; c <= 5; ++c) set(rejoin_row, c, CellTag::Empty);
  set(rejoin_row + 1, 3, CellTag::Goal);

  CorridorMeta meta;
  meta.scenic_left = cfg.scenic_left;
  meta.choice_point = {choice_row, 3};
  meta.barrier_start_row = choice_row + 1;

  auto lane_cells = [&](int side_col, int inner_col) {
    std::vector<Cell> lane;
    lane.push_back({choice_row, inner_col});
    lane.push_back({choice_row, side_col});
    for (int r = choice_row + 1; r <= rejoin_row; ++r) lane.push_back({r, side_col});
    lane.push_back({rejoin_row, inner_col});
    return lane;
  };
  std::vector<Cell> left = lane_cells(1, 2);
  std::vector<Cell> right = lane_cells(5, 4);
  meta.scenic_lane = cfg.scenic_left ? left : right;
  meta.dull_lane = cfg.scenic_left ? right : left;

  // Varying texture along the scenic lane, uniform texture along the dull one.
  for (size_t i = 0; i < meta.scenic_lane.size(); ++i) {
    CellTag t = (cfg.scenic_varying && i % 2 == 0) ? CellTag::Scenic : CellTag::Dull;
    set(meta.scenic_lane[i].row, meta.scenic_lane[i].col, t);
  }
  for (const Cell& c : meta.dull_lane) set(c.row, c.col, CellTag::Dull);

  w.start = {{1, 3}, Heading::S};
  w.step_limit = cfg.step_limit;
  w.corridor = std::move(meta);
  return w;
}

WorldSpec grid_world(const GridConfig& cfg) {
  WorldSpec w;
  w.rows = cfg.rows;
  w.cols = cfg.cols;
  w.cells.assign(static_cast<size_t>(w.rows * w.cols), CellTag::Empty);
  auto set = [&](int r, int c, CellTag t) {
    w.cells[static_cast<size_t>(r * w.cols + c)] = t;
  };
  for (int r = 0; r < w.rows; ++r) {
    set(r, 0, CellTag::Wall);
    set(r, w.cols - 1, CellTag::Wall);
  }
  for (int c = 0; c < w.cols; ++c) {
    set(0, c, CellTag::Wall);
    set(w.rows - 1, c, CellTag::Wall);
  }
  set(w.rows - 2, w.cols - 2, CellTag::Goal);
  if (cfg.hazards) {
    // Placed on minimal start->goal paths so the safety metric discriminates.
    set(1, std::min(6, w.cols - 3), CellTag::Hazard);
    set(w.rows / 2, w.cols / 2, CellTag::Hazard);
    set(w.rows / 2 + 1, w.cols - 2, CellTag::Hazard);
  }
  w.start = {{1, 1}, Heading::E};
  w.step_limit = cfg.step_limit;
  return w;
}

WorldSpec play_world(const PlayConfig& cfg) {
  WorldSpec w;
  w.rows = cfg.rows;
  w.cols = cfg.cols;
  w.cells.assign(static_cast<size_t>(w.rows * w.cols), CellTag::Dull);
  auto set = [&](int r, int c, CellTag t) {
    w.cells[static_cast<size_t>(r * w.cols + c)] = t;
  };
  for (int r = 0; r < w.rows; ++r) {
    set(r, 0, CellTag::Wall);
    set(r, w.cols - 1, CellTag::Wall);
  }
  for (int c = 0; c < w.cols; ++c) {
    set(0, c, CellTag::Wall);
    set(w.rows - 1, c, CellTag::Wall);
  }
  w.start = {{w.rows / 2, w.cols / 2}, Heading::N};
  w.step_limit = cfg.step_limit;
  return w;
}

static char cell_char(CellTag t) {
  switch (t) {
    case CellTag::Empty: return '.';
    case CellTag::Wall: return '#';
    case CellTag::Hazard: return 'H';
    case CellTag::Goal: return 'G';
    case CellTag::Scenic: return 'S';
    case CellTag::Dull: return 'D';
  }
  return '?';
}

static CellTag cell_from_char(char c) {
  switch (c) {
    case '.': return CellTag::Empty;
    case '#': return CellTag::Wall;
    case 'H': return CellTag::Hazard;
    case 'G': return CellTag::Goal;
    case 'S': return CellTag::Scenic;
    case 'D': return CellTag::Dull;
  }
  throw std::invalid_argument(std::string("bad map char: ") + c);
}

static void dump_lane(std::ostringstream& out, const char* name,
                      const std::vector<Cell>& lane) {
  out << name;
  for (const Cell& c : lane) out << ' ' << c.row << ',' << c.col;
  out << '\n';
}

std::string dump_world(const WorldSpec& w) {
  std::ostringstream out;
  out << "rows " << w.rows << " cols " << w.cols << '\n';
  out << "start " << w.start.cell.row << ' ' << w.start.cell.col << ' '
      << to_string(w.start.heading) << '\n';
  out << "limit " << w.step_limit << '\n';
  out << "legend #=wall .=empty H=hazard G=goal S=scenic D=dull\n";
  out << "map\n";
  for (int r = 0; r < w.rows; ++r) {
    for (int c = 0; c < w.cols; ++c) out << cell_char(w.at({r, c}));
    out << '\n';
  }
  out << "endmap\n";
  if (w.corridor) {
    const CorridorMeta& m = *w.corridor;
    out << "corridor scenic_left " << (m.scenic_left ? 1 : 0) << " barrier_row "
        << m.barrier_start_row << " choice " << m.choice_point.row << ' '
        << m.choice_point.col << '\n';
    dump_lane(out, "scenic_lane", m.scenic_lane);
    dump_lane(out, "dull_lane", m.dull_lane);
  }
  return out.str();
}

static std::vector<Cell> parse_lane(std::istringstream& ls) {
  std::vector<Cell> lane;
  std::string pair;
  while (ls >> pair) {
    auto comma = pair.find(',');
    if (comma == std::string::npos) throw std::invalid_argument("bad lane cell");
    lane.push_back({std::stoi(pair.substr(0, comma)), std::stoi(pair.substr(comma + 1))});
  }
  return lane;
}

WorldSpec parse_world(std::string_view text) {
  WorldSpec w;
  std::istringstream in{std::string(text)};
  std::string line;
  bool in_map = false;
  int map_row = 0;
  CorridorMeta meta;
  bool has_corridor = false;
  while (std::getline(in, line)) {
    if (in_map) {
      if (line == "endmap") {
        in_map = false;
        continue;
      }
      if (static_cast<int>(line.size()) != w.cols || map_row >= w.rows)
        throw std::invalid_argument("map shape mismatch");
      for (int c = 0; c < w.cols; ++c)
        w.cells[static_cast<size_t>(map_row * w.cols + c)] = cell_from_char(line[static_cast<size_t>(c)]);
      ++map_row;
      continue;
    }
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "rows") {
      std::string colsw;
      ls >> w.rows >> colsw >> w.cols;
      w.cells.assign(static_cast<size_t>(w.rows * w.cols), CellTag::Wall);
    } else if (word == "start") {
      std::string h;
      ls >> w.start.cell.row >> w.start.cell.col >> h;
      w.start.heading = heading_from_char(h.at(0));
    } else if (word == "limit") {
      ls >> w.step_limit;
    } else if (word == "legend") {
      continue;
    } else if (word == "map") {
      in_map = true;
    } else if (word == "corridor") {
      std::string kw;
      int left = 1;
      ls >> kw >> left >> kw >> meta.barrier_start_row >> kw >>
          meta.choice_point.row >> meta.choice_point.col;
      meta.scenic_left = left != 0;
      has_corridor = true;
    } else if (word == "scenic_lane") {
      meta.scenic_lane = parse_lane(ls);
    } else if (word == "dull_lane") {
      meta.dull_lane = parse_lane(ls);
    } else {
      throw std::invalid_argument("unknown world directive: " + word);
    }
  }
  if (has_corridor) w.corridor = std::move(meta);
  return w;
}

static Heading heading_between(Cell from, Cell to) {
  if (to.row == from.row - 1 && to.col == from.col) return Heading::N;
  if (to.row == from.row + 1 && to.col == from.col) return Heading::S;
  if (to.col == from.col + 1 && to.row == from.row) return Heading::E;
  if (to.col == from.col - 1 && to.row == from.row) return Heading::W;
  throw std::invalid_argument("cells not adjacent");
}

std::vector<Action> corridor_lane_walk(const WorldSpec& world, bool scenic) {
  if (!world.corridor) throw std::invalid_argument("not a corridor world");
  const CorridorMeta& m = *world.corridor;
  const std::vector<Cell>& lane = scenic ? m.scenic_lane : m.dull_lane;

  std::vector<Cell> path;
  path.push_back(world.start.cell);
  for (int r = world.start.cell.row + 1; r <= m.choice_point.row; ++r)
    path.push_back({r, m.choice_point.col});
  for (const Cell& c : lane) path.push_back(c);
  Cell rejoin{lane.back().row, m.choice_point.col};
  path.push_back(rejoin);
  path.push_back({rejoin.row + 1, m.choice_point.col});  // goal

  std::vector<Action> actions;
  Heading heading = world.start.heading;
  for (size_t i = 0; i + 1 < path.size(); ++i) {
    Heading want = heading_between(path[i], path[i + 1]);
    while (heading != want) {
      int diff = (static_cast<int>(want) - static_cast<int>(heading) + 4) % 4;
      Action a = diff == 3 ? Action::TurnLeft : Action::TurnRight;
      actions.push_back(a);
      heading = turn(heading, a);
    }
    actions.push_back(Action::Forward);
  }
  return actions;
}

}  // namespace reconips
