#pragma once

#include <cstddef>
#include <vector>

namespace hhq {

// Every data-parallel kernel takes one of these. `serial` is the reference
// implementation the tests compare against; `parallel` is OpenMP. Both fill
// index-addressed buffers and reduce in a fixed order, so results are
// bit-identical across thread counts.
enum class exec_policy { serial, parallel };

// Pairwise (tree) summation over a buffer. Deterministic: the reduction order
// depends only on n, never on the thread schedule that produced the buffer.
template <typename T>
T pairwise_sum(std::vector<T> v) {
  if (v.empty()) return T{};
  std::size_t n = v.size();
  while (n > 1) {
    std::size_t half = n / 2;
    for (std::size_t i = 0; i < half; ++i) v[i] = v[2 * i] + v[2 * i + 1];
    if (n % 2) {
      v[half] = v[n - 1];
      ++half;
    }
    n = half;
  }
  return v[0];
}

}  // namespace hhq
