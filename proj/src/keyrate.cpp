#include "tfqss/keyrate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "tfqss/channel.hpp"

namespace tfqss {

double gain(double mu, double eta, double dark_count) {
  // 1 - (1-2p_d) e^{-x} written to keep precision when x is tiny.
  const double x = mu * eta;
  return -std::expm1(-x) + 2.0 * dark_count * std::exp(-x);
}

double qber(double mu, double eta, double dark_count, double misalignment) {
  const double q = gain(mu, eta, dark_count);
  if (!(q > 0.0)) throw DegenerateChannelError("zero gain: QBER undefined");
  const double background = 2.0 * dark_count * std::exp(-mu * eta);
  return misalignment + (kBackgroundErrorRate - misalignment) * background / q;
}

double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0)) throw ParameterError("binary_entropy argument outside [0, 1]");
  if (x == 0.0 || x == 1.0) return 0.0;
  return -(x * std::log(x) + (1.0 - x) * std::log1p(-x)) / std::numbers::ln2;
}

double collision_probability(double e) {
  const double t = 1.0 - 6.0 * e;
  return 1.0 - e * e - t * t / 2.0;
}

double collision_bound(double e) {
  return collision_probability(std::min(e, kCollisionPeakQber));
}

RateBreakdown key_rate_at(double mu, double eta, const SystemParams& params) {
  if (!(mu > 0.0 && mu < 0.5)) throw ParameterError("mu outside (0, 0.5)");
  RateBreakdown r;
  r.gain = gain(mu, eta, params.dark_count());
  r.qber = qber(mu, eta, params.dark_count(), params.misalignment());
  r.collision = collision_bound(r.qber);
  r.ec_term = params.ec_efficiency() * binary_entropy(std::clamp(r.qber, 0.0, 1.0));
  if (r.collision <= 0.0) return r;
  r.privacy_term = -(1.0 - 2.0 * mu) * std::log2(r.collision);
  r.rate = std::max(0.0, r.gain * (r.privacy_term - r.ec_term));
  return r;
}

RateBreakdown key_rate(double mu, double distance_km, const SystemParams& params) {
  return key_rate_at(mu, transmittance(distance_km, params), params);
}

}  // namespace tfqss
