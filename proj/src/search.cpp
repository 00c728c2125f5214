#include "tfqss/search.hpp"

#include <cmath>
#include <vector>

#include "tfqss/core.hpp"

namespace tfqss {

Maximum golden_section_max(const std::function<double(double)>& f, double a, double b,
                           int iterations) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int i = 0; i < iterations; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? Maximum{c, fc} : Maximum{d, fd};
}

Maximum maximize_log_grid(const std::function<double(double)>& f, double lo, double hi,
                          const SearchSettings& settings) {
  if (settings.grid_size < 16) throw ParameterError("grid_size must be >= 16");
  if (settings.refine_iters < 0) throw ParameterError("refine_iters must be >= 0");
  if (!(lo > 0.0 && lo < hi)) throw ParameterError("search interval must satisfy 0 < lo < hi");

  const int n = settings.grid_size;
  const double log_lo = std::log(lo);
  const double log_step = (std::log(hi) - log_lo) / (n - 1);
  std::vector<double> grid(n);
  for (int i = 0; i < n; ++i) grid[i] = std::exp(log_lo + log_step * i);
  grid.front() = lo;
  grid.back() = hi;

  int best = 0;
  double best_value = f(grid[0]);
  for (int i = 1; i < n; ++i) {
    const double v = f(grid[i]);
    if (v > best_value) {
      best_value = v;
      best = i;
    }
  }
  if (best_value <= 0.0) return {lo, best_value};

  const double a = grid[best > 0 ? best - 1 : 0];
  const double b = grid[best < n - 1 ? best + 1 : n - 1];
  const Maximum refined = golden_section_max(f, a, b, settings.refine_iters);
  if (refined.value > best_value) return refined;
  return {grid[best], best_value};
}

}  // namespace tfqss
