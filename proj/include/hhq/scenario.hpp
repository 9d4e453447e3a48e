#pragma once

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hhq/dipole.hpp"
#include "hhq/parallel.hpp"
#include "hhq/phase_grid.hpp"
#include "hhq/types.hpp"

// JSON run configuration and scenario execution. A scenario resolves its
// inputs (inline dipole synthesis, waveform file, direct shift table),
// computes one named pipeline, and returns an ordered list of output files;
// the last one is always manifest.txt with a SHA-256 per file. Everything is
// deterministic: the same config produces byte-identical files.

namespace hhq::scenario {

enum class kind { phi_hh, psi_omega, cat, w_limit, completeness, cutoff_scan, verify };

std::string kind_name(kind k);

struct run_config {
  kind scenario = kind::verify;

  std::optional<cplx> alpha;

  // table sources; exactly one may be present (waveform sources additionally
  // need kappa and harmonic_cutoff)
  std::optional<dipole::dipole_spec> dip;
  std::optional<std::string> dipole_file;
  std::optional<dipole::shift_table> shifts;
  std::optional<std::string> shift_file;
  std::optional<double> kappa;
  std::optional<std::size_t> harmonic_cutoff;  // N

  std::optional<std::vector<cplx>> postselect;        // psi_omega (1), cat (N-1)
  std::optional<std::array<std::size_t, 3>> modes;    // w_limit harmonic orders
  std::optional<cplx> chi;                            // completeness
  std::size_t fock_cutoff = 24;                       // completeness
  std::optional<phase_grid> grid;                     // geometry override
  std::vector<double> refine_steps{1.6, 0.8, 0.4};    // completeness prelude
  std::vector<std::size_t> cutoffs;                   // cutoff_scan N values

  std::string output_dir = ".";
  double compress_tol = 1e-14;
  double spacing_rel = 1e-9;
  exec_policy policy = exec_policy::parallel;
};

// Strict parse: unknown keys anywhere (top level or nested objects) are
// config errors, as are missing required keys, wrong types, and
// scenario/parameter inconsistencies. Complex numbers are [re, im] pairs.
run_config parse_config(const std::string& json_text);

// Human-readable resolution of what execute() would do. No computation, no
// file reads, no file writes.
std::string describe(const run_config& c);

struct scenario_result {
  // (filename, content) in write order; manifest.txt last
  std::vector<std::pair<std::string, std::string>> files;
  std::string summary;  // short stdout block
  bool verification_failed = false;
};

scenario_result execute(const run_config& c);

}  // namespace hhq::scenario
