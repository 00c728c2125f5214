#pragma once

#include <iosfwd>

#include "tfqss/config.hpp"

namespace tfqss {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitAbort = 2;

inline constexpr std::string_view kScanHeader =
    "L_km,e_d,mu_opt,gain,qber,rate,plob,repeaterless,dps_baseline";
inline constexpr std::string_view kAttackHeader =
    "mu,L_km,eta,qber,beta,internal_split,internal_general,external,dominant";

// Each command writes to config.output when set, otherwise to `out`.
// Invalid settings throw ConfigError or ParameterError.

/// Rate-vs-distance CSV, rows sorted by e_d then L.
int cmd_scan(const Config& config, std::ostream& out);

/// Monte Carlo report; returns kExitAbort when the QBER check fails.
int cmd_simulate(const Config& config, std::ostream& out);

/// Leakage table over mu_list at the configured distance.
int cmd_attack(const Config& config, std::ostream& out);

}  // namespace tfqss
