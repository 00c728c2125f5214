#pragma once

#include <optional>
#include <vector>

#include "tfqss/core.hpp"
#include "tfqss/keyrate.hpp"
#include "tfqss/search.hpp"

namespace tfqss {

// Intensity search range, kept 1e-6 away from the singular endpoints.
inline constexpr double kMuMin = 1e-6;
inline constexpr double kMuMax = 0.5 - 1e-6;

struct IntensityOptimum {
  double mu = kMuMin;
  RateBreakdown breakdown;
};

/// Maximizes the key rate over mu at the given arm transmittance.
IntensityOptimum optimize_mu_at(double eta, const SystemParams& params,
                                const SearchSettings& search = {});

/// Maximizes the key rate over mu at total distance L.
IntensityOptimum optimize_mu(double distance_km, const SystemParams& params,
                             const SearchSettings& search = {});

struct ScanRange {
  double l_min = 0.0;
  double l_max = 700.0;
  double step = 10.0;

  /// l_min, l_min + step, ... up to l_max (inclusive within 1e-9 step).
  std::vector<double> distances() const;
};

struct ScanOptions {
  SearchSettings search;
  unsigned threads = 1;
};

/// One row per distance for each misalignment, ordered by e_d (as given)
/// then by distance. Rows are bit-identical for any thread count.
std::vector<RatePoint> scan_distances(const ScanRange& range, const SystemParams& params,
                                      const std::vector<double>& misalignments,
                                      const ScanOptions& options = {});

RatePoint rate_point(double distance_km, const SystemParams& params,
                     const SearchSettings& search = {});

inline constexpr double kCrossoverSearchMax = 800.0;

struct CrossoverSettings {
  SearchSettings search;
  double l_max = kCrossoverSearchMax;
  double coarse_step = 1.0;
  int bisection_iters = 60;
};

/// Optimized rate minus the PLOB bound at distance L.
double plob_margin(double distance_km, const SystemParams& params,
                   const SearchSettings& search = {});

/// Smallest L in [0, l_max] where the optimized rate exceeds the PLOB bound,
/// or nothing if the rate never does.
std::optional<double> find_crossover(const SystemParams& params, double misalignment,
                                     const CrossoverSettings& settings = {});

/// Largest e_d in [lo, hi] for which a PLOB crossover exists, by bisection.
/// Nothing if none exists at lo.
std::optional<double> critical_misalignment(const SystemParams& params, double lo = 0.0,
                                            double hi = 0.2, double tolerance = 1e-5,
                                            const CrossoverSettings& settings = {});

/// Largest L in [0, l_max] with optimized rate above threshold.
std::optional<double> transmission_reach(const SystemParams& params, double threshold = 1e-10,
                                         double l_max = 1000.0,
                                         const CrossoverSettings& settings = {});

}  // namespace tfqss
