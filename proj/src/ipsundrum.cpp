#include "reconips/ipsundrum.hpp"

#include <cmath>
#include <stdexcept>

namespace reconips {

void IpsundrumParams::validate() const {
  if (!(pi >= 0.0)) throw std::invalid_argument("pi must be >= 0");
  if (!(d >= 0.0 && d < 1.0)) throw std::invalid_argument("d must be in [0,1)");
  if (!(h > 0.0)) throw std::invalid_argument("h must be > 0");
  if (!(g_eff >= 0.0)) throw std::invalid_argument("g_eff must be >= 0");
  if (!(d_e >= 0.0 && d_e < 1.0)) throw std::invalid_argument("d_e must be in [0,1)");
  if (!(noise_std >= 0.0)) throw std::invalid_argument("noise_std must be >= 0");
  if (!(fatigue_rate >= 0.0 && fatigue_rate <= 1.0))
    throw std::invalid_argument("fatigue_rate must be in [0,1]");
  if (!(divisive_norm_k >= 0.0))
    throw std::invalid_argument("divisive_norm_k must be >= 0");
}

double alpha_eff(const IpsundrumParams& params, double pi_t) {
  return params.d + (1.0 - params.d) * (params.g_eff * params.h * pi_t);
}

static double apply_nonlinearity(const IpsundrumParams& p, double drive) {
  if (p.f == Nonlinearity::Sigmoid)
    return 1.0 / (1.0 + std::exp(-p.sigmoid_slope * (drive - p.sigmoid_midpoint)));
  return drive;
}

StepOutput ipsundrum_step(double input, const IpsundrumState& state,
                          const IpsundrumParams& params, LesionFlags lesion,
                          Rng* rng) {
  params.validate();
  if (!(input >= -1.0 && input <= 1.0))
    throw std::invalid_argument("input outside [-1,1]");

  double e_prev = lesion.cut_feedback ? 0.0 : state.e;
  double pi_t = lesion.cut_feedback ? 0.0 : params.pi;
  double d_t = lesion.bypass_integration ? 0.0 : params.d;

  double feedback = pi_t * e_prev;
  if (params.divisive_norm_k > 0.0)
    feedback /= 1.0 + params.divisive_norm_k * e_prev;

  double eps = 0.0;
  if (params.noise_std > 0.0 && rng) eps = rng->normal(0.0, params.noise_std);

  double drive = input + feedback + params.b - state.fatigue_acc + eps;

  StepOutput out;
  out.ns = clip01(apply_nonlinearity(params, drive));
  out.state.x = d_t * state.x + (1.0 - d_t) * out.ns;
  out.m = clip01(params.h * out.state.x);
  out.state.ne = params.d_e * state.ne + (1.0 - params.d_e) * out.m;
  out.state.e = clip01(params.g_eff * out.m);
  out.state.fatigue_acc =
      params.fatigue_rate * out.m + (1.0 - params.fatigue_rate) * state.fatigue_acc;

  IpsundrumParams eff = params;
  eff.d = d_t;
  out.alpha_eff = alpha_eff(eff, pi_t);
  return out;
}

std::vector<LesionFlags> apply_lesion_schedule(int episode_steps, int t_lesion,
                                               LesionFlags flags) {
  if (t_lesion < 0) throw std::invalid_argument("t_lesion must be >= 0");
  std::vector<LesionFlags> schedule(static_cast<size_t>(episode_steps));
  for (int t = t_lesion; t < episode_steps; ++t)
    schedule[static_cast<size_t>(t)] = flags;
  return schedule;
}

}  // namespace reconips
