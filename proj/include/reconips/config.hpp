#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "reconips/policy.hpp"
#include "reconips/recon.hpp"
#include "reconips/variant.hpp"
#include "reconips/world.hpp"

namespace reconips {

// Full run configuration: every parameter any module reads has a field here
// with a declared default, so a config plus seed list fully determines the
// results tree.

struct GoalAssayConfig {
  int h_min = 1;
  int h_max = 20;
};

struct FamiliarityAssayConfig {
  int familiarization_walks = 5;
  int post_episodes = 20;
  bool side_bias_control = true;
};

struct PlayAssayConfig {
  bool curiosity = true;
};

struct PainAssayConfig {
  int settle_steps = 30;
  int baseline_window = 10;
  int post_steps = 150;
};

struct LesionAssayConfig {
  int settle_steps = 30;
  int baseline_window = 10;
  int window = 150;
  int t_lesion = 3;
};

struct RunConfig {
  Variant variant = Variant::Recon;
  std::string assay = "lesion";
  std::vector<uint64_t> seeds;
  uint64_t stats_seed = 12345;
  int bootstrap_resamples = 2000;
  double bootstrap_level = 0.95;
  int jobs = 1;
  bool traces = false;
  std::string results_root = "results";

  IpsundrumParams ipsundrum;
  AffectParams affect;
  FusionWeights fusion;
  PolicyWeights policy;
  int horizon = 5;

  StageConfig stage;
  int network_rounds = 8;

  CorridorConfig corridor;
  GridConfig grid;
  PlayConfig play;

  GoalAssayConfig goal;
  FamiliarityAssayConfig familiarity;
  PlayAssayConfig play_assay;
  PainAssayConfig pain;
  LesionAssayConfig lesion;

  static RunConfig defaults_for(Variant v);

  ModelParams model_params() const { return {ipsundrum, affect, fusion}; }

  std::string to_json_text() const;
  static RunConfig from_json_text(const std::string& text);

  // Dotted-path override, e.g. "policy.w_nov=0.3" or "ipsundrum.d=0.7".
  void apply_override(const std::string& assignment);

  // All statically checkable invariants; returns human-readable violations.
  std::vector<std::string> validate() const;

  uint64_t config_hash() const;
};

std::vector<uint64_t> parse_seed_list(const std::string& text);  // "0..4" or "1,2,7"

}  // namespace reconips
