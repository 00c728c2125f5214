#pragma once

#include "tfqss/core.hpp"

namespace tfqss {

/// Terms of the asymptotic key rate
///   R = Q [ -(1-2mu) log2(P_co) - f h(E) ].
struct RateBreakdown {
  double gain = 0.0;
  double qber = 0.0;
  double collision = 0.0;  // collision bound actually used
  double privacy_term = 0.0;
  double ec_term = 0.0;
  double rate = 0.0;
};

/// Q = 1 - (1-2p_d) exp(-mu eta).
double gain(double mu, double eta, double dark_count);

/// E from E*Q = e_d Q + (1/2 - e_d) 2 p_d exp(-mu eta). Throws
/// DegenerateChannelError when Q == 0.
double qber(double mu, double eta, double dark_count, double misalignment);

/// Shannon entropy in bits; h(0) = h(1) = 0.
double binary_entropy(double x);

/// Raw individual-attack collision bound 1 - E^2 - (1-6E)^2/2. Peaks at
/// E = 3/19 and is not monotone beyond it.
double collision_probability(double qber);

/// Error rate at which collision_probability peaks.
inline constexpr double kCollisionPeakQber = 3.0 / 19.0;

/// Non-decreasing envelope of collision_probability: the bound is held at its
/// peak for E >= 3/19, since an attacker allowed a larger error can always
/// inject less.
double collision_bound(double qber);

/// Rate at a given arm transmittance. Clamped to 0 when the bracket is
/// negative or the collision bound is non-positive.
RateBreakdown key_rate_at(double mu, double eta, const SystemParams& params);

/// Rate at total distance L (each arm L/2).
RateBreakdown key_rate(double mu, double distance_km, const SystemParams& params);

}  // namespace tfqss
