#pragma once

#include <string>
#include <string_view>

#include "reconips/affect.hpp"
#include "reconips/ipsundrum.hpp"
#include "reconips/sensory.hpp"

namespace reconips {

// The three fixed-parameter model variants. They share the policy and
// environment interface and differ only in internal dynamics and which
// internal variables exist.
enum class Variant { Recon, Ipsundrum, IpsundrumAffect };

const char* to_string(Variant v);
Variant variant_from_string(std::string_view s);
// Claim-key suffix: recon / humphrey / hb.
const char* claim_suffix(Variant v);

inline bool affect_enabled(Variant v) { return v == Variant::IpsundrumAffect; }
inline bool recurrence_enabled(Variant v) { return v != Variant::Recon; }

struct ModelParams {
  IpsundrumParams ipsundrum;
  AffectParams affect;
  FusionWeights fusion;
};

// Per-episode internal state; visitation memory lives in the policy module.
struct InternalState {
  IpsundrumState ips;
  AffectState aff;
  double recon_ne = 0.0;  // stage-B efference copy (motor low-pass)
};

struct InternalOutputs {
  double ns = 0.0;
  double ne = 0.0;
  double m = 0.0;
  double alpha_eff = 0.0;
  double pi_t = 0.0;
  // NaN unless affect is enabled.
  double ni, nv, na;
  InternalOutputs();
};

// One internal update from fused input: affect step (affect variant),
// precision/gain modulation, then the recurrence step - or the stateless
// biased readout for the baseline. Shared by the online loop and the
// planner's forward model.
InternalOutputs advance_internal(Variant variant, double input,
                                 InternalState& state, const ModelParams& params,
                                 LesionFlags lesion, Rng* rng = nullptr);

// Motor-command magnitude used for the efference-copy proxy.
double motor_magnitude(int action_index);

}  // namespace reconips
