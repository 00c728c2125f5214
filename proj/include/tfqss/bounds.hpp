#pragma once

#include "tfqss/core.hpp"
#include "tfqss/search.hpp"

namespace tfqss {

/// Linear repeaterless (PLOB) capacity between Alice and Bob:
/// -log2(1 - eta_d 10^(-alpha L / 10)). Returns +inf when the argument of
/// the logarithm is 1 (lossless, perfect detectors).
double plob_bound(double distance_km, const SystemParams& params);

/// eta_d 10^(-alpha L / 20); numerically the single-arm transmittance.
double repeaterless_bound(double distance_km, const SystemParams& params);

/// End-to-end transmittance eta_d 10^(-alpha L / 10) seen by the
/// sequential DPS-QSS baseline (signal traverses the whole line).
double baseline_transmittance(double distance_km, const SystemParams& params);

/// DPS-QSS comparison curve. Modeling assumption: the same key-rate formula
/// evaluated over one full-length channel, with mu optimized independently.
/// At L = 0 this coincides with the twin-field rate.
double dps_qss_baseline(double distance_km, const SystemParams& params,
                        const SearchSettings& search = {});

}  // namespace tfqss
