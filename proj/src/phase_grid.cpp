#include "hhq/phase_grid.hpp"

#include <cmath>

namespace hhq {

void validate(const phase_grid& g) {
  if (!(g.step > 0.0)) throw precondition_error("phase_grid: step must be > 0");
  // tiny slack so radius/step pairs like 0.6/0.2 pass despite rounding
  if (!(g.radius >= 3.0 * g.step * (1.0 - 1e-12)))
    throw precondition_error("phase_grid: radius must be >= 3 x step");
  if (!std::isfinite(g.center.real()) || !std::isfinite(g.center.imag()) ||
      !std::isfinite(g.radius))
    throw precondition_error("phase_grid: non-finite parameter");
  if (!g.values.empty()) {
    const std::size_t n =
        2 * static_cast<std::size_t>(std::floor(g.radius / g.step + 1e-9)) + 1;
    if (g.values.size() != n * n)
      throw precondition_error("phase_grid: values length does not match the grid");
  }
}

std::size_t grid_half_points(const phase_grid& g) {
  validate(g);
  return static_cast<std::size_t>(std::floor(g.radius / g.step + 1e-9));
}

std::size_t grid_axis_points(const phase_grid& g) { return 2 * grid_half_points(g) + 1; }

double grid_axis_offset(const phase_grid& g, std::size_t k) {
  const auto m = static_cast<double>(grid_half_points(g));
  return (static_cast<double>(k) - m) * g.step;
}

double grid_axis_weight(const phase_grid& g, std::size_t k) {
  const std::size_t n = grid_axis_points(g);
  return (k == 0 || k + 1 == n) ? 0.5 * g.step : g.step;
}

}  // namespace hhq
