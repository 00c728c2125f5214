#pragma once

#include "tfqss/core.hpp"
#include "tfqss/rng.hpp"

namespace tfqss {

/// Sender-to-Charlie transmittance including detector efficiency:
/// eta_d * 10^(-alpha L / 20), where L is the total Alice-Bob distance and
/// each arm is L/2 long.
double transmittance(double distance_km, const SystemParams& params);

struct ChannelState {
  double transmittance = 0.0;
  SystemParams params;

  static ChannelState at_distance(double distance_km, const SystemParams& params) {
    return {tfqss::transmittance(distance_km, params), params};
  }
};

/// Exact click probability of the threshold-detector model for one slot:
/// 1 - (1-p_d)^2 exp(-mu eta).
double slot_click_probability(double mu, double eta, const SystemParams& params);

// Per-slot detector model. Light of mean mu*eta arrives at Charlie's
// interferometer; each photon leaves through the port matching the phase
// difference with probability 1-e_d. Port photon counts are independent
// Poisson variables, so a detector fires iff it saw >= 1 photon or a dark
// count: P(click) = 1 - (1-p_d) exp(-lambda_port). D1 matches phase 0.
Outcome detect_slot(std::uint8_t phase_bit, double mu, double eta, const SystemParams& params,
                    Rng& rng);

}  // namespace tfqss
