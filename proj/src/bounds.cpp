#include "tfqss/bounds.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "tfqss/channel.hpp"
#include "tfqss/keyrate.hpp"
#include "tfqss/optimize.hpp"

namespace tfqss {

double baseline_transmittance(double distance_km, const SystemParams& params) {
  if (!(distance_km >= 0.0)) throw ParameterError("distance must be >= 0");
  return params.detector_efficiency() *
         std::pow(10.0, -params.attenuation() * distance_km / 10.0);
}

double plob_bound(double distance_km, const SystemParams& params) {
  const double eta = baseline_transmittance(distance_km, params);
  if (eta >= 1.0) return std::numeric_limits<double>::infinity();
  return -std::log1p(-eta) / std::numbers::ln2;
}

double repeaterless_bound(double distance_km, const SystemParams& params) {
  return transmittance(distance_km, params);
}

double dps_qss_baseline(double distance_km, const SystemParams& params,
                        const SearchSettings& search) {
  const double eta = baseline_transmittance(distance_km, params);
  return optimize_mu_at(eta, params, search).breakdown.rate;
}

}  // namespace tfqss
