#include "tfqss/channel.hpp"

#include <cmath>

namespace tfqss {

double transmittance(double distance_km, const SystemParams& params) {
  if (!(distance_km >= 0.0)) throw ParameterError("distance must be >= 0");
  return params.detector_efficiency() *
         std::pow(10.0, -params.attenuation() * distance_km / 20.0);
}

double slot_click_probability(double mu, double eta, const SystemParams& params) {
  const double no_dark = 1.0 - params.dark_count();
  return -std::expm1(std::log(no_dark * no_dark) - mu * eta);
}

Outcome detect_slot(std::uint8_t phase_bit, double mu, double eta, const SystemParams& params,
                    Rng& rng) {
  const double mean = mu * eta;
  const double e_d = params.misalignment();
  const double no_dark = 1.0 - params.dark_count();
  const double p_right = 1.0 - no_dark * std::exp(-(1.0 - e_d) * mean);
  const double p_wrong = 1.0 - no_dark * std::exp(-e_d * mean);

  const bool right = rng.uniform() < p_right;
  const bool wrong = rng.uniform() < p_wrong;
  if (right && wrong) return Outcome::Double;
  if (!right && !wrong) return Outcome::NoClick;
  const bool d1 = (phase_bit == 0) == right;
  return d1 ? Outcome::D1 : Outcome::D2;
}

}  // namespace tfqss
