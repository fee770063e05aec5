#include "reconips/sensory.hpp"

#include <cmath>
#include <stdexcept>

#include "reconips/rng.hpp"

namespace reconips {

void FusionWeights::validate() const {
  if (!(w_touch >= 0.0 && w_smell >= 0.0 && w_vision >= 0.0))
    throw std::invalid_argument("channel weights must be >= 0");
  if (!(scenic_value < 0.0)) throw std::invalid_argument("scenic_value must be < 0");
  if (!(hazard_value > 0.0)) throw std::invalid_argument("hazard_value must be > 0");
  if (!(distance_falloff > 0.0 && distance_falloff <= 1.0))
    throw std::invalid_argument("distance_falloff must be in (0,1]");
  if (cone_depth < 1) throw std::invalid_argument("cone_depth must be >= 1");
}

static double tag_value(ConeTag tag, const FusionWeights& w) {
  switch (tag) {
    case ConeTag::Hazard: return w.hazard_value;
    case ConeTag::Scenic: return w.scenic_value;
    default: return 0.0;
  }
}

double fuse(const Observation& obs, const FusionWeights& weights,
            bool affect_enabled) {
  weights.validate();
  double vision = 0.0;
  for (const ConeCell& c : obs.vision)
    vision += tag_value(c.tag, weights) *
              std::pow(weights.distance_falloff, static_cast<double>(c.distance));
  double raw = weights.w_touch * obs.touch + weights.w_smell * obs.smell +
               weights.w_vision * vision;
  raw = clip(raw, -1.0, 1.0);
  return affect_enabled ? raw : std::max(0.0, raw);
}

}  // namespace reconips
