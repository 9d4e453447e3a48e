#pragma once

#include <string>
#include <vector>

// Self-contained cross-validation suite: every coherent-superposition
// operation, the conditioning pipeline, the closed-form builders and the
// analysis quantities are recomputed through an independent route (truncated
// Fock matrices, brute-force double sums, closed forms) and compared at fixed
// tolerances. Deterministic: fixed seed, fixed parameter sets, serial
// evaluation, so two runs produce byte-identical reports.

namespace hhq::verify {

struct check_result {
  std::string name;
  bool passed = false;
  double deviation = 0.0;
  double tolerance = 0.0;
  std::string detail;  // optional context (parameters, counts)
};

struct verification_report {
  std::vector<check_result> checks;
  bool all_passed = false;
};

verification_report run_verification();

// One line per check, "[PASS]/[FAIL] name: deviation <= tolerance (detail)",
// plus a summary line. Numbers via num::fmt, so the text is reproducible.
std::string format_report(const verification_report& r);

}  // namespace hhq::verify
