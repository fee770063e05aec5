#include "reconips/affect.hpp"

#include <cmath>
#include <stdexcept>

namespace reconips {

void AffectParams::validate() const {
  if (!(sp >= 0.0 && sp <= 1.0)) throw std::invalid_argument("sp must be in [0,1]");
  if (!(k_ctrl >= 0.0)) throw std::invalid_argument("k_ctrl must be >= 0");
  if (!(k_demand >= 0.0)) throw std::invalid_argument("k_demand must be >= 0");
  if (!(bb0 >= 0.0 && bb0 <= 1.0)) throw std::invalid_argument("bb0 must be in [0,1]");
  if (!(mod_strength >= 0.0)) throw std::invalid_argument("mod_strength must be >= 0");
}

std::pair<AffectReadout, AffectState> affect_step(double input,
                                                  const AffectState& state,
                                                  const AffectParams& params) {
  params.validate();
  if (!(input >= -1.0 && input <= 1.0))
    throw std::invalid_argument("input outside [-1,1]");

  // Positive input is cost (depletes the budget), negative input deposits.
  double demand = params.k_demand * input;
  double err = params.sp - state.bb;

  AffectState next;
  next.bb = clip01(state.bb + params.k_ctrl * err - demand);

  AffectReadout out;
  out.ni = next.bb;
  out.nv = clip01(1.0 - std::abs(next.bb - params.sp));
  out.na = clip01(std::abs(err) + std::abs(demand));
  return {out, next};
}

std::pair<double, double> modulate_loop(const AffectParams& params,
                                        const AffectReadout& readout,
                                        const IpsundrumParams& base) {
  double scale = 1.0 + params.mod_strength * readout.na;
  double pi_t = params.modulate_precision ? base.pi * scale : base.pi;
  double g_t = params.modulate_gain ? base.g_eff * scale : base.g_eff;
  if (pi_t < 0.0) pi_t = 0.0;
  if (g_t < 0.0) g_t = 0.0;
  return {pi_t, g_t};
}

}  // namespace reconips
