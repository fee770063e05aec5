#pragma once

#include <vector>

namespace reconips {

// Fuses the touch/smell/vision-cone feature bundle into the signed
// sensory-evidence scalar in [-1,1]. Positive = noxious, negative = scenic.
// Not an external reward.

enum class ConeTag { Hazard, Scenic, Dull, Wall, Goal, Empty };

struct ConeCell {
  int distance = 1;  // cells ahead, 1-based
  ConeTag tag = ConeTag::Empty;
};

struct Observation {
  double touch = 0.0;  // 1 on hazard contact
  double smell = 0.0;  // hazard proximity gradient
  std::vector<ConeCell> vision;
};

struct FusionWeights {
  double w_touch = 1.0;
  double w_smell = 0.2;
  double w_vision = 0.4;
  double scenic_value = -1.0;
  double hazard_value = 1.0;
  double distance_falloff = 0.5;  // multiplicative per cell of distance
  int cone_depth = 3;

  void validate() const;
};

// Rectification (input <- max(0, input)) applies when affect is disabled, so
// non-affect variants can represent cost but get no pleasantness channel.
double fuse(const Observation& obs, const FusionWeights& weights,
            bool affect_enabled);

}  // namespace reconips
