#include "tfqss/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "tfqss/bounds.hpp"
#include "tfqss/channel.hpp"

namespace tfqss {

IntensityOptimum optimize_mu_at(double eta, const SystemParams& params,
                                const SearchSettings& search) {
  const auto objective = [&](double mu) { return key_rate_at(mu, eta, params).rate; };
  const Maximum best = maximize_log_grid(objective, kMuMin, kMuMax, search);
  return {best.x, key_rate_at(best.x, eta, params)};
}

IntensityOptimum optimize_mu(double distance_km, const SystemParams& params,
                             const SearchSettings& search) {
  return optimize_mu_at(transmittance(distance_km, params), params, search);
}

std::vector<double> ScanRange::distances() const {
  if (!(l_min >= 0.0 && l_min < l_max)) throw ParameterError("scan requires 0 <= l_min < l_max");
  if (!(step > 0.0)) throw ParameterError("scan step must be > 0");
  std::vector<double> out;
  for (std::size_t i = 0;; ++i) {
    const double l = l_min + step * static_cast<double>(i);
    if (l > l_max + 1e-9 * step) break;
    out.push_back(l);
  }
  return out;
}

RatePoint rate_point(double distance_km, const SystemParams& params,
                     const SearchSettings& search) {
  const IntensityOptimum opt = optimize_mu(distance_km, params, search);
  RatePoint p;
  p.distance = distance_km;
  p.misalignment = params.misalignment();
  p.mu_opt = opt.mu;
  p.gain = opt.breakdown.gain;
  p.qber = opt.breakdown.qber;
  p.rate = opt.breakdown.rate;
  p.plob = plob_bound(distance_km, params);
  p.repeaterless = repeaterless_bound(distance_km, params);
  p.dps_baseline = dps_qss_baseline(distance_km, params, search);
  return p;
}

std::vector<RatePoint> scan_distances(const ScanRange& range, const SystemParams& params,
                                      const std::vector<double>& misalignments,
                                      const ScanOptions& options) {
  const std::vector<double> distances = range.distances();
  std::vector<SystemParams> variants;
  variants.reserve(misalignments.size());
  for (double e_d : misalignments) variants.push_back(params.with_misalignment(e_d));

  const std::size_t total = distances.size() * variants.size();
  std::vector<RatePoint> rows(total);
  const auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t i = begin; i < total; i += stride) {
      rows[i] = rate_point(distances[i % distances.size()], variants[i / distances.size()],
                           options.search);
    }
  };

  const std::size_t n_threads = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(total, 1));
  if (n_threads == 1) {
    work(0, 1);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(n_threads);
    for (std::size_t t = 0; t < n_threads; ++t) pool.emplace_back(work, t, n_threads);
  }
  return rows;
}

double plob_margin(double distance_km, const SystemParams& params,
                   const SearchSettings& search) {
  return optimize_mu(distance_km, params, search).breakdown.rate - plob_bound(distance_km, params);
}

namespace {

// Shrinks [below, above] where pred(below) is false and pred(above) true.
template <typename Pred>
double bisect_boundary(Pred pred, double below, double above, int iterations) {
  for (int i = 0; i < iterations; ++i) {
    const double mid = 0.5 * (below + above);
    if (pred(mid)) {
      above = mid;
    } else {
      below = mid;
    }
  }
  return above;
}

}  // namespace

std::optional<double> find_crossover(const SystemParams& base, double misalignment,
                                     const CrossoverSettings& settings) {
  const SystemParams params = base.with_misalignment(misalignment);
  const auto margin = [&](double l) { return plob_margin(l, params, settings.search); };

  const ScanRange range{0.0, settings.l_max, settings.coarse_step};
  const std::vector<double> grid = range.distances();
  std::vector<double> margins(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) margins[i] = margin(grid[i]);

  const auto first_positive =
      std::find_if(margins.begin(), margins.end(), [](double m) { return m > 0.0; });
  std::size_t index;
  double positive_l;
  if (first_positive != margins.end()) {
    index = static_cast<std::size_t>(first_positive - margins.begin());
    positive_l = grid[index];
  } else {
    // Narrow windows can slip between coarse points: refine the best margin.
    index = static_cast<std::size_t>(std::max_element(margins.begin(), margins.end()) -
                                     margins.begin());
    const double a = grid[index > 0 ? index - 1 : 0];
    const double b = grid[std::min(index + 1, grid.size() - 1)];
    const Maximum peak = golden_section_max(margin, a, b, settings.bisection_iters);
    if (!(peak.value > 0.0)) return std::nullopt;
    positive_l = peak.x;
  }
  if (index == 0 && margins[0] > 0.0) return 0.0;

  const double below = grid[index > 0 ? index - 1 : 0];
  return bisect_boundary([&](double l) { return margin(l) > 0.0; }, below, positive_l,
                         settings.bisection_iters);
}

std::optional<double> critical_misalignment(const SystemParams& params, double lo, double hi,
                                            double tolerance,
                                            const CrossoverSettings& settings) {
  const auto exists = [&](double e_d) { return find_crossover(params, e_d, settings).has_value(); };
  if (!exists(lo)) return std::nullopt;
  if (exists(hi)) return hi;
  while (hi - lo > tolerance) {
    const double mid = 0.5 * (lo + hi);
    if (exists(mid)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

std::optional<double> transmission_reach(const SystemParams& params, double threshold,
                                         double l_max, const CrossoverSettings& settings) {
  const auto above = [&](double l) {
    return optimize_mu(l, params, settings.search).breakdown.rate > threshold;
  };
  const std::vector<double> grid = ScanRange{0.0, l_max, settings.coarse_step}.distances();
  std::optional<std::size_t> last;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (above(grid[i])) last = i;
  }
  if (!last) return std::nullopt;
  if (*last + 1 == grid.size()) return grid.back();
  // Bisect on "not above" between the last passing and the next failing point.
  const double lo = grid[*last];
  const double hi = grid[*last + 1];
  double below = lo;
  double upper = hi;
  for (int i = 0; i < settings.bisection_iters; ++i) {
    const double mid = 0.5 * (below + upper);
    if (above(mid)) {
      below = mid;
    } else {
      upper = mid;
    }
  }
  return below;
}

}  // namespace tfqss
