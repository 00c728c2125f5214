#include "tfqss/attacks.hpp"

#include <algorithm>

#include "tfqss/channel.hpp"
#include "tfqss/keyrate.hpp"

namespace tfqss {

std::string_view to_string(LeakageKind kind) {
  switch (kind) {
    case LeakageKind::InternalGeneral: return "internal_general";
    case LeakageKind::InternalSplit: return "internal_split";
    case LeakageKind::External: return "external";
  }
  return "unknown";
}

double beta_unclamped(double mu, double qber) {
  if (!(mu < 0.5)) throw ParameterError("beta bound requires mu < 0.5");
  return 4.0 * qber / (1.0 - 2.0 * mu);
}

double beta_bound(double mu, double qber) {
  return std::clamp(beta_unclamped(mu, qber), 0.0, 1.0);
}

double internal_leakage(double mu, double eta, double beta) {
  return std::clamp(2.0 * mu * beta + 2.0 * mu * (1.0 - beta) * (1.0 - eta), 0.0, 1.0);
}

double external_leakage(double mu, double eta) {
  return std::clamp(2.0 * mu * (1.0 - eta), 0.0, 1.0);
}

LeakageReport leakage_report(double mu, double distance_km, const SystemParams& params) {
  if (!(mu > 0.0 && mu < 0.5)) throw ParameterError("mu outside (0, 0.5)");
  LeakageReport r;
  r.mu = mu;
  r.transmittance = transmittance(distance_km, params);
  r.qber = qber(mu, r.transmittance, params.dark_count(), params.misalignment());
  r.beta = beta_bound(mu, r.qber);
  r.internal_split = internal_leakage(mu, r.transmittance, r.beta);
  r.internal_general = std::clamp(2.0 * mu, 0.0, 1.0);
  r.external = external_leakage(mu, r.transmittance);

  // Ties resolve toward the general attack; it dominates whenever beta <= 1.
  r.dominant = LeakageKind::InternalGeneral;
  if (r.internal_split > r.internal_general) r.dominant = LeakageKind::InternalSplit;
  if (r.external > std::max(r.internal_general, r.internal_split)) {
    r.dominant = LeakageKind::External;
  }
  return r;
}

}  // namespace tfqss
