#pragma once

#include <complex>
#include <stdexcept>
#include <string>

namespace hhq {

using cplx = std::complex<double>;

// Violated caller contract (bad argument, malformed input). Exit code 2 at the CLI.
class precondition_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numerical guard tripped (truncation leakage, underflow outside the modeled
// regime, non-finite intermediate). Exit code 3 at the CLI.
class guard_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Config file / CLI flag problems. Exit code 2 at the CLI.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hhq
