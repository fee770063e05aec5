#include "reconips/variant.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace reconips {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::Recon: return "recon";
    case Variant::Ipsundrum: return "ipsundrum";
    case Variant::IpsundrumAffect: return "ipsundrum_affect";
  }
  return "?";
}

Variant variant_from_string(std::string_view s) {
  if (s == "recon") return Variant::Recon;
  if (s == "ipsundrum") return Variant::Ipsundrum;
  if (s == "ipsundrum_affect") return Variant::IpsundrumAffect;
  throw std::invalid_argument("unknown variant: " + std::string(s));
}

const char* claim_suffix(Variant v) {
  switch (v) {
    case Variant::Recon: return "recon";
    case Variant::Ipsundrum: return "humphrey";
    case Variant::IpsundrumAffect: return "hb";
  }
  return "?";
}

InternalOutputs::InternalOutputs()
    : ni(std::numeric_limits<double>::quiet_NaN()),
      nv(std::numeric_limits<double>::quiet_NaN()),
      na(std::numeric_limits<double>::quiet_NaN()) {}

InternalOutputs advance_internal(Variant variant, double input,
                                 InternalState& state, const ModelParams& params,
                                 LesionFlags lesion, Rng* rng) {
  InternalOutputs out;

  if (variant == Variant::Recon) {
    // No recurrence: the sensory terminal reflects current input only.
    IpsundrumState zero;
    LesionFlags cut{true, true};
    StepOutput s = ipsundrum_step(input, zero, params.ipsundrum, cut, nullptr);
    out.ns = s.ns;
    out.ne = state.recon_ne;  // advanced separately from the chosen action
    out.m = 0.0;
    out.alpha_eff = 0.0;
    out.pi_t = 0.0;
    return out;
  }

  IpsundrumParams eff = params.ipsundrum;
  if (variant == Variant::IpsundrumAffect) {
    auto [readout, next_aff] = affect_step(input, state.aff, params.affect);
    state.aff = next_aff;
    auto [pi_t, g_t] = modulate_loop(params.affect, readout, params.ipsundrum);
    eff.pi = pi_t;
    eff.g_eff = g_t;
    out.ni = readout.ni;
    out.nv = readout.nv;
    out.na = readout.na;
  }

  StepOutput s = ipsundrum_step(input, state.ips, eff, lesion, rng);
  state.ips = s.state;
  out.ns = s.ns;
  out.ne = s.state.ne;
  out.m = s.m;
  out.alpha_eff = s.alpha_eff;
  out.pi_t = lesion.cut_feedback ? 0.0 : eff.pi;
  return out;
}

double motor_magnitude(int action_index) {
  return action_index == 0 ? 1.0 : 0.5;  // forward vs turn
}

}  // namespace reconips
