#pragma once

#include <string_view>

#include "tfqss/core.hpp"

namespace tfqss {

enum class LeakageKind { InternalGeneral, InternalSplit, External };

std::string_view to_string(LeakageKind kind);

/// Fractions of Charlie's sifted key available to each attacker.
struct LeakageReport {
  double mu = 0.0;
  double transmittance = 0.0;
  double qber = 0.0;
  double beta = 0.0;
  double internal_split = 0.0;    // photon splitting + beam splitting by a dishonest Bob
  double internal_general = 0.0;  // general individual attack: 2 mu
  double external = 0.0;          // outside eavesdropper: 2 mu (1 - eta)
  LeakageKind dominant = LeakageKind::InternalGeneral;
};

/// beta from beta * ((1-2mu)/2) * (1/2) = E, i.e. 4E/(1-2mu), without
/// clamping. Throws ParameterError for mu >= 0.5.
double beta_unclamped(double mu, double qber);

/// Allowed photon-splitting fraction, clamped to [0, 1].
double beta_bound(double mu, double qber);

/// 2 mu beta + 2 mu (1-beta)(1-eta), clamped to [0, 1].
double internal_leakage(double mu, double eta, double beta);

double external_leakage(double mu, double eta);

LeakageReport leakage_report(double mu, double distance_km, const SystemParams& params);

}  // namespace tfqss
