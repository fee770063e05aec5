#pragma once

#include <vector>

#include "reconips/rng.hpp"

namespace reconips {

// Single-step recurrence over reafferent signal E, integrator X and efference
// copy Ne, used identically online and inside the planner's forward model.

enum class Nonlinearity { Linear, Sigmoid };

struct IpsundrumParams {
  double pi = 0.5;      // precision gain on the reafferent feedback term
  double b = 0.5;       // sensor bias mapping signed input into [0,1]
  double d = 0.8;       // integrator decay
  double h = 1.0;       // thick-moment gain
  double g_eff = 0.6;   // feedback gain
  double d_e = 0.5;     // efference-copy decay
  Nonlinearity f = Nonlinearity::Linear;
  double sigmoid_slope = 4.0;
  double sigmoid_midpoint = 0.5;
  double noise_std = 0.0;       // headline runs are noise-free
  double fatigue_rate = 0.0;    // off by default
  double divisive_norm_k = 0.0; // off by default

  void validate() const;  // throws std::invalid_argument on bound violations
};

struct IpsundrumState {
  double e = 0.0;   // reafferent signal
  double x = 0.0;   // integrator
  double ne = 0.0;  // efference-copy level
  double fatigue_acc = 0.0;
};

struct LesionFlags {
  bool cut_feedback = false;       // forces E_prev = 0 and pi = 0
  bool bypass_integration = false; // forces d = 0
};

struct StepOutput {
  double ns = 0.0;
  IpsundrumState state;
  double alpha_eff = 0.0;
  double m = 0.0;
};

// Effective recurrence strength: d + (1-d) * g_eff * h * pi_t.
double alpha_eff(const IpsundrumParams& params, double pi_t);

// One update of the loop. Noise is drawn only when noise_std > 0 and an rng
// is supplied, so headline runs never touch the stream.
StepOutput ipsundrum_step(double input, const IpsundrumState& state,
                          const IpsundrumParams& params, LesionFlags lesion,
                          Rng* rng = nullptr);

// Sham before t_lesion, the given flags from t_lesion onward.
std::vector<LesionFlags> apply_lesion_schedule(int episode_steps, int t_lesion,
                                               LesionFlags flags);

}  // namespace reconips
