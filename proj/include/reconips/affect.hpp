#pragma once

#include <utility>

#include "reconips/ipsundrum.hpp"

namespace reconips {

// Minimal body-budget interoception: a scalar budget bb regulated toward a
// setpoint, depleted by noxious input and replenished by scenic input, with
// valence/arousal readouts and optional modulation of loop precision/gain.

struct AffectParams {
  double sp = 0.7;        // setpoint
  double k_ctrl = 0.1;    // homeostatic controller gain
  double k_demand = 0.3;  // stimulus demand scale
  double bb0 = 0.4;       // initial budget level
  bool modulate_precision = true;
  bool modulate_gain = true;
  double mod_strength = 0.5;

  void validate() const;
};

struct AffectState {
  double bb = 0.4;
};

struct AffectReadout {
  double ni = 0.0;  // budget proxy
  double nv = 0.0;  // valence: closeness to setpoint
  double na = 0.0;  // arousal: prediction error magnitude plus demand
};

std::pair<AffectReadout, AffectState> affect_step(double input,
                                                  const AffectState& state,
                                                  const AffectParams& params);

// Arousal scales precision and/or feedback gain multiplicatively; returns the
// effective (pi_t, g_eff_t) pair.
std::pair<double, double> modulate_loop(const AffectParams& params,
                                        const AffectReadout& readout,
                                        const IpsundrumParams& base);

}  // namespace reconips
