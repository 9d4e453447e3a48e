#pragma once

#include <cstddef>
#include <vector>

#include "hhq/types.hpp"

// Square phase-space sampling grid shared by the Wigner scans and the POVM
// completeness quadrature. Points run over
//   gamma = center + (i - m) step + 1i (j - m) step,  i, j in 0..2m,
// with m = floor(radius / step). Row-major values use i (the real axis) as
// the slow index. Trapezoidal weights per axis.

namespace hhq {

struct phase_grid {
  cplx center{0.0, 0.0};
  double radius = 0.0;
  double step = 0.0;
  std::vector<double> values;  // empty until a scan fills it; length (2m+1)^2
};

// step > 0, radius >= 3 * step, finite center, values empty or (2m+1)^2 long.
void validate(const phase_grid& g);

// m = floor(radius / step + eps): points per half-axis.
std::size_t grid_half_points(const phase_grid& g);
// points per axis, 2m + 1
std::size_t grid_axis_points(const phase_grid& g);
// offset of the k-th axis point from the center, (k - m) * step
double grid_axis_offset(const phase_grid& g, std::size_t k);
// trapezoidal axis weight: step at interior points, step/2 at the two ends
double grid_axis_weight(const phase_grid& g, std::size_t k);

}  // namespace hhq
