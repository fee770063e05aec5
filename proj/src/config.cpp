#include "reconips/config.hpp"

#include <json.hpp>
#include <stdexcept>

#include "reconips/rng.hpp"

namespace reconips {

using nlohmann::json;

RunConfig RunConfig::defaults_for(Variant v) {
  RunConfig cfg;
  cfg.variant = v;
  cfg.policy = PolicyWeights::defaults_for(v);
  for (uint64_t s = 0; s < 20; ++s) cfg.seeds.push_back(s);
  return cfg;
}

namespace {

json policy_json(const PolicyWeights& w) {
  return json{{"w_v", w.w_v},
              {"w_a", w.w_a},
              {"w_s", w.w_s},
              {"w_bb", w.w_bb},
              {"w_epi", w.w_epi},
              {"w_nov", w.w_nov},
              {"w_prog", w.w_prog},
              {"w_haz", w.w_haz},
              {"w_caution", w.w_caution},
              {"w_lowchange", w.w_lowchange},
              {"w_fwdprior", w.w_fwdprior},
              {"cost_forward", w.cost_forward},
              {"cost_turn", w.cost_turn}};
}

void policy_from(const json& j, PolicyWeights& w) {
  w.w_v = j.value("w_v", w.w_v);
  w.w_a = j.value("w_a", w.w_a);
  w.w_s = j.value("w_s", w.w_s);
  w.w_bb = j.value("w_bb", w.w_bb);
  w.w_epi = j.value("w_epi", w.w_epi);
  w.w_nov = j.value("w_nov", w.w_nov);
  w.w_prog = j.value("w_prog", w.w_prog);
  w.w_haz = j.value("w_haz", w.w_haz);
  w.w_caution = j.value("w_caution", w.w_caution);
  w.w_lowchange = j.value("w_lowchange", w.w_lowchange);
  w.w_fwdprior = j.value("w_fwdprior", w.w_fwdprior);
  w.cost_forward = j.value("cost_forward", w.cost_forward);
  w.cost_turn = j.value("cost_turn", w.cost_turn);
}

json config_json(const RunConfig& c) {
  json j;
  j["variant"] = to_string(c.variant);
  j["assay"] = c.assay;
  j["seeds"] = c.seeds;
  j["stats_seed"] = c.stats_seed;
  j["bootstrap_resamples"] = c.bootstrap_resamples;
  j["bootstrap_level"] = c.bootstrap_level;
  j["traces"] = c.traces;
  j["ipsundrum"] = {
      {"pi", c.ipsundrum.pi},
      {"b", c.ipsundrum.b},
      {"d", c.ipsundrum.d},
      {"h", c.ipsundrum.h},
      {"g_eff", c.ipsundrum.g_eff},
      {"d_e", c.ipsundrum.d_e},
      {"nonlinearity", c.ipsundrum.f == Nonlinearity::Linear ? "linear" : "sigmoid"},
      {"sigmoid_slope", c.ipsundrum.sigmoid_slope},
      {"sigmoid_midpoint", c.ipsundrum.sigmoid_midpoint},
      {"noise_std", c.ipsundrum.noise_std},
      {"fatigue_rate", c.ipsundrum.fatigue_rate},
      {"divisive_norm_k", c.ipsundrum.divisive_norm_k}};
  j["affect"] = {{"sp", c.affect.sp},
                 {"k_ctrl", c.affect.k_ctrl},
                 {"k_demand", c.affect.k_demand},
                 {"bb0", c.affect.bb0},
                 {"modulate_precision", c.affect.modulate_precision},
                 {"modulate_gain", c.affect.modulate_gain},
                 {"mod_strength", c.affect.mod_strength}};
  j["fusion"] = {{"w_touch", c.fusion.w_touch},
                 {"w_smell", c.fusion.w_smell},
                 {"w_vision", c.fusion.w_vision},
                 {"scenic_value", c.fusion.scenic_value},
                 {"hazard_value", c.fusion.hazard_value},
                 {"distance_falloff", c.fusion.distance_falloff},
                 {"cone_depth", c.fusion.cone_depth}};
  j["policy"] = policy_json(c.policy);
  j["horizon"] = c.horizon;
  j["recon"] = {{"percept_cycles", c.stage.percept_cycles},
                {"gate_threshold", c.stage.gate_threshold},
                {"network_rounds", c.network_rounds}};
  j["worlds"] = {
      {"corridor",
       {{"lane_len", c.corridor.lane_len},
        {"scenic_left", c.corridor.scenic_left},
        {"scenic_varying", c.corridor.scenic_varying},
        {"step_limit", c.corridor.step_limit}}},
      {"grid",
       {{"rows", c.grid.rows},
        {"cols", c.grid.cols},
        {"hazards", c.grid.hazards},
        {"step_limit", c.grid.step_limit}}},
      {"play",
       {{"rows", c.play.rows}, {"cols", c.play.cols}, {"step_limit", c.play.step_limit}}}};
  j["assays"] = {
      {"goal", {{"h_min", c.goal.h_min}, {"h_max", c.goal.h_max}}},
      {"familiarity",
       {{"familiarization_walks", c.familiarity.familiarization_walks},
        {"post_episodes", c.familiarity.post_episodes},
        {"side_bias_control", c.familiarity.side_bias_control}}},
      {"play", {{"curiosity", c.play_assay.curiosity}}},
      {"pain",
       {{"settle_steps", c.pain.settle_steps},
        {"baseline_window", c.pain.baseline_window},
        {"post_steps", c.pain.post_steps}}},
      {"lesion",
       {{"settle_steps", c.lesion.settle_steps},
        {"baseline_window", c.lesion.baseline_window},
        {"window", c.lesion.window},
        {"t_lesion", c.lesion.t_lesion}}}};
  return j;
}

RunConfig config_from(const json& j) {
  Variant v = variant_from_string(j.value("variant", "recon"));
  RunConfig c = RunConfig::defaults_for(v);
  c.assay = j.value("assay", c.assay);
  if (j.contains("seeds")) c.seeds = j.at("seeds").get<std::vector<uint64_t>>();
  c.stats_seed = j.value("stats_seed", c.stats_seed);
  c.bootstrap_resamples = j.value("bootstrap_resamples", c.bootstrap_resamples);
  c.bootstrap_level = j.value("bootstrap_level", c.bootstrap_level);
  c.traces = j.value("traces", c.traces);
  if (j.contains("ipsundrum")) {
    const json& p = j.at("ipsundrum");
    c.ipsundrum.pi = p.value("pi", c.ipsundrum.pi);
    c.ipsundrum.b = p.value("b", c.ipsundrum.b);
    c.ipsundrum.d = p.value("d", c.ipsundrum.d);
    c.ipsundrum.h = p.value("h", c.ipsundrum.h);
    c.ipsundrum.g_eff = p.value("g_eff", c.ipsundrum.g_eff);
    c.ipsundrum.d_e = p.value("d_e", c.ipsundrum.d_e);
    std::string f = p.value("nonlinearity", "linear");
    if (f == "linear") c.ipsundrum.f = Nonlinearity::Linear;
    else if (f == "sigmoid") c.ipsundrum.f = Nonlinearity::Sigmoid;
    else throw std::invalid_argument("bad nonlinearity: " + f);
    c.ipsundrum.sigmoid_slope = p.value("sigmoid_slope", c.ipsundrum.sigmoid_slope);
    c.ipsundrum.sigmoid_midpoint =
        p.value("sigmoid_midpoint", c.ipsundrum.sigmoid_midpoint);
    c.ipsundrum.noise_std = p.value("noise_std", c.ipsundrum.noise_std);
    c.ipsundrum.fatigue_rate = p.value("fatigue_rate", c.ipsundrum.fatigue_rate);
    c.ipsundrum.divisive_norm_k =
        p.value("divisive_norm_k", c.ipsundrum.divisive_norm_k);
  }
  if (j.contains("affect")) {
    const json& p = j.at("affect");
    c.affect.sp = p.value("sp", c.affect.sp);
    c.affect.k_ctrl = p.value("k_ctrl", c.affect.k_ctrl);
    c.affect.k_demand = p.value("k_demand", c.affect.k_demand);
    c.affect.bb0 = p.value("bb0", c.affect.bb0);
    c.affect.modulate_precision =
        p.value("modulate_precision", c.affect.modulate_precision);
    c.affect.modulate_gain = p.value("modulate_gain", c.affect.modulate_gain);
    c.affect.mod_strength = p.value("mod_strength", c.affect.mod_strength);
  }
  if (j.contains("fusion")) {
    const json& p = j.at("fusion");
    c.fusion.w_touch = p.value("w_touch", c.fusion.w_touch);
    c.fusion.w_smell = p.value("w_smell", c.fusion.w_smell);
    c.fusion.w_vision = p.value("w_vision", c.fusion.w_vision);
    c.fusion.scenic_value = p.value("scenic_value", c.fusion.scenic_value);
    c.fusion.hazard_value = p.value("hazard_value", c.fusion.hazard_value);
    c.fusion.distance_falloff =
        p.value("distance_falloff", c.fusion.distance_falloff);
    c.fusion.cone_depth = p.value("cone_depth", c.fusion.cone_depth);
  }
  if (j.contains("policy")) policy_from(j.at("policy"), c.policy);
  c.horizon = j.value("horizon", c.horizon);
  if (j.contains("recon")) {
    const json& p = j.at("recon");
    c.stage.percept_cycles = p.value("percept_cycles", c.stage.percept_cycles);
    c.stage.gate_threshold = p.value("gate_threshold", c.stage.gate_threshold);
    c.network_rounds = p.value("network_rounds", c.network_rounds);
  }
  if (j.contains("worlds")) {
    const json& w = j.at("worlds");
    if (w.contains("corridor")) {
      const json& p = w.at("corridor");
      c.corridor.lane_len = p.value("lane_len", c.corridor.lane_len);
      c.corridor.scenic_left = p.value("scenic_left", c.corridor.scenic_left);
      c.corridor.scenic_varying = p.value("scenic_varying", c.corridor.scenic_varying);
      c.corridor.step_limit = p.value("step_limit", c.corridor.step_limit);
    }
    if (w.contains("grid")) {
      const json& p = w.at("grid");
      c.grid.rows = p.value("rows", c.grid.rows);
      c.grid.cols = p.value("cols", c.grid.cols);
      c.grid.hazards = p.value("hazards", c.grid.hazards);
      c.grid.step_limit = p.value("step_limit", c.grid.step_limit);
    }
    if (w.contains("play")) {
      const json& p = w.at("play");
      c.play.rows = p.value("rows", c.play.rows);
      c.play.cols = p.value("cols", c.play.cols);
      c.play.step_limit = p.value("step_limit", c.play.step_limit);
    }
  }
  if (j.contains("assays")) {
    const json& a = j.at("assays");
    if (a.contains("goal")) {
      c.goal.h_min = a.at("goal").value("h_min", c.goal.h_min);
      c.goal.h_max = a.at("goal").value("h_max", c.goal.h_max);
    }
    if (a.contains("familiarity")) {
      const json& p = a.at("familiarity");
      c.familiarity.familiarization_walks =
          p.value("familiarization_walks", c.familiarity.familiarization_walks);
      c.familiarity.post_episodes = p.value("post_episodes", c.familiarity.post_episodes);
      c.familiarity.side_bias_control =
          p.value("side_bias_control", c.familiarity.side_bias_control);
    }
    if (a.contains("play"))
      c.play_assay.curiosity = a.at("play").value("curiosity", c.play_assay.curiosity);
    if (a.contains("pain")) {
      const json& p = a.at("pain");
      c.pain.settle_steps = p.value("settle_steps", c.pain.settle_steps);
      c.pain.baseline_window = p.value("baseline_window", c.pain.baseline_window);
      c.pain.post_steps = p.value("post_steps", c.pain.post_steps);
    }
    if (a.contains("lesion")) {
      const json& p = a.at("lesion");
      c.lesion.settle_steps = p.value("settle_steps", c.lesion.settle_steps);
      c.lesion.baseline_window = p.value("baseline_window", c.lesion.baseline_window);
      c.lesion.window = p.value("window", c.lesion.window);
      c.lesion.t_lesion = p.value("t_lesion", c.lesion.t_lesion);
    }
  }
  return c;
}

}  // namespace

std::string RunConfig::to_json_text() const { return config_json(*this).dump(2) + "\n"; }

RunConfig RunConfig::from_json_text(const std::string& text) {
  return config_from(json::parse(text));
}

void RunConfig::apply_override(const std::string& assignment) {
  auto eq = assignment.find('=');
  if (eq == std::string::npos)
    throw std::invalid_argument("override must look like path.key=value");
  std::string path = assignment.substr(0, eq);
  std::string value = assignment.substr(eq + 1);

  json j = config_json(*this);
  json* node = &j;
  size_t pos = 0;
  while (true) {
    size_t dot = path.find('.', pos);
    std::string key = path.substr(pos, dot == std::string::npos ? dot : dot - pos);
    if (!node->contains(key))
      throw std::invalid_argument("unknown config path: " + path);
    node = &(*node)[key];
    if (dot == std::string::npos) break;
    pos = dot + 1;
  }
  json parsed = json::parse(value, nullptr, false);
  if (parsed.is_discarded()) parsed = value;  // plain string
  *node = parsed;
  int saved_jobs = jobs;  // runtime fields live outside the serialized config
  std::string saved_root = results_root;
  *this = config_from(j);
  jobs = saved_jobs;
  results_root = saved_root;
}

std::vector<std::string> RunConfig::validate() const {
  std::vector<std::string> v;
  auto check = [&](bool ok, const std::string& msg) {
    if (!ok) v.push_back(msg);
  };
  try {
    ipsundrum.validate();
  } catch (const std::exception& e) {
    v.push_back(std::string("ipsundrum: ") + e.what());
  }
  try {
    affect.validate();
  } catch (const std::exception& e) {
    v.push_back(std::string("affect: ") + e.what());
  }
  try {
    fusion.validate();
  } catch (const std::exception& e) {
    v.push_back(std::string("fusion: ") + e.what());
  }

  // Variant gating: affect weights exist only where the variables do.
  if (variant == Variant::Recon)
    check(policy.w_v == 0 && policy.w_a == 0 && policy.w_s == 0 && policy.w_bb == 0,
          "policy: recon variant requires (w_v, w_a, w_s, w_bb) = 0");
  if (variant == Variant::Ipsundrum)
    check(policy.w_v == 0 && policy.w_a == 0 && policy.w_bb == 0,
          "policy: ipsundrum variant requires (w_v, w_a, w_bb) = 0");

  check(horizon >= 1, "horizon must be >= 1");
  check(goal.h_min >= 1 && goal.h_max >= goal.h_min, "goal horizon sweep malformed");
  check(jobs >= 1, "jobs must be >= 1");
  check(!seeds.empty(), "seed list is empty");
  check(bootstrap_resamples >= 1, "bootstrap_resamples must be >= 1");
  check(bootstrap_level > 0.0 && bootstrap_level < 1.0,
        "bootstrap_level must be in (0,1)");

  // Corridor lane symmetry: equal lane lengths and no hazards in either lane.
  try {
    WorldSpec w = corridor_world(corridor);
    const CorridorMeta& m = *w.corridor;
    check(m.scenic_lane.size() == m.dull_lane.size(), "corridor lanes unequal");
    for (const Cell& c : m.scenic_lane)
      check(w.at(c) != CellTag::Hazard, "hazard in scenic lane");
    for (const Cell& c : m.dull_lane)
      check(w.at(c) != CellTag::Hazard, "hazard in dull lane");
    check(corridor_lane_walk(w, true).size() == corridor_lane_walk(w, false).size(),
          "lane walks differ in length");
  } catch (const std::exception& e) {
    v.push_back(std::string("corridor: ") + e.what());
  }
  return v;
}

uint64_t RunConfig::config_hash() const {
  std::string text = to_json_text();
  return hash_tag(text);
}

std::vector<uint64_t> parse_seed_list(const std::string& text) {
  std::vector<uint64_t> seeds;
  size_t pos = 0;
  while (pos < text.size()) {
    size_t comma = text.find(',', pos);
    std::string tok = text.substr(pos, comma == std::string::npos ? comma : comma - pos);
    auto dots = tok.find("..");
    if (dots != std::string::npos) {
      uint64_t lo = std::stoull(tok.substr(0, dots));
      uint64_t hi = std::stoull(tok.substr(dots + 2));
      for (uint64_t s = lo; s <= hi; ++s) seeds.push_back(s);
    } else if (!tok.empty()) {
      seeds.push_back(std::stoull(tok));
    }
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return seeds;
}

}  // namespace reconips
