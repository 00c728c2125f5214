#pragma once

#include <functional>

namespace tfqss {

struct SearchSettings {
  int grid_size = 128;
  int refine_iters = 60;
};

struct Maximum {
  double x = 0.0;
  double value = 0.0;
};

/// Maximizes f on [lo, hi] (0 < lo < hi): a log-spaced grid of grid_size
/// points locates the best cell, then golden-section search refines inside
/// the neighbouring cells. The result is never worse than the best grid
/// point. When f is zero everywhere on the grid, returns (lo, f(lo)).
Maximum maximize_log_grid(const std::function<double(double)>& f, double lo, double hi,
                          const SearchSettings& settings);

/// Golden-section maximization on [a, b] for a fixed number of iterations.
Maximum golden_section_max(const std::function<double(double)>& f, double a, double b,
                           int iterations);

}  // namespace tfqss
