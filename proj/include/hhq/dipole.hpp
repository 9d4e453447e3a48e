#pragma once

#include <cstddef>
#include <vector>

#include "hhq/parallel.hpp"
#include "hhq/types.hpp"

// Dipole waveforms and their conversion to per-mode displacement amplitudes
// chi_q, phases phi_q, and the decoherence factor Omega.

namespace hhq::dipole {

struct dipole_waveform {
  std::vector<double> samples;  // <d>(t) in atomic units
  double t0 = 0.0;
  double dt = 0.0;    // uniform step, units of 1/omega
  double omega = 1.0;  // fundamental angular frequency (dimensionless time: 1)
};

// Throws precondition_error unless dt > 0, omega > 0, >= 2 finite samples.
void validate(const dipole_waveform& w);

struct comb_component {
  int q = 1;          // harmonic order
  double amp = 0.0;   // cosine amplitude
};

// Synthetic test-waveform generator. kind::monochromatic is a single cosine,
// kind::comb a sum of cosines, kind::enveloped a comb under a Gaussian window.
struct dipole_spec {
  enum class kind { monochromatic, comb, enveloped };
  kind k = kind::monochromatic;
  std::vector<comb_component> components;  // monochromatic uses exactly one
  int cycles = 1;
  int samples_per_cycle = 64;
  double omega = 1.0;
  double envelope_center = 0.0;  // enveloped only
  double envelope_width = 1.0;   // enveloped only, Gaussian sigma
};

// Uniform sampling over exactly `cycles` fundamental periods, endpoint
// included. Rejects cycles < 1 and samples_per_cycle < 8 x (max harmonic
// order present), naming the violated bound.
dipole_waveform synth_dipole(const dipole_spec& spec);

// chi_q = -i sqrt(q) kappa * Integral dt <d>(t) e^{+i q omega t}, trapezoid
// over the waveform window.
cplx mode_shift(const dipole_waveform& w, int q, double kappa);

// phi_q = q kappa^2 * DoubleIntegral_{t2<t1} <d>(t1) <d>(t2) sin[q omega (t1-t2)].
// Evaluated in O(M) by expanding sin(a-b) and carrying prefix trapezoids of
// <d> cos(q w t) and <d> sin(q w t); weights identical to the nested
// trapezoid rule.
double mode_phase(const dipole_waveform& w, int q, double kappa);

struct shift_table {
  double kappa = 0.0;
  double omega = 1.0;
  std::size_t N = 0;        // harmonic cutoff; entries are q = 1..N
  std::vector<cplx> chi;    // chi[q-1]
  std::vector<double> phi;  // phi[q-1]

  cplx chi_of(std::size_t q) const;     // 1-based, bounds-checked
  double phi_of(std::size_t q) const;
};

// Throws unless N >= 1 and vector lengths equal N (fundamental entry present).
void validate(const shift_table& t);

// Builds a table directly from given shifts (phases default to zero).
shift_table table_from_values(double kappa, double omega, std::vector<cplx> chi,
                              std::vector<double> phi = {});

// chi_q and phi_q for q = 1..N. Rejects N < 2 (no harmonic modes).
// Per-q extraction is independent; policy picks serial or OpenMP.
shift_table all_shifts(const dipole_waveform& w, std::size_t N, double kappa,
                       exec_policy policy = exec_policy::serial);

// Omega = sum_{q=2}^{N} |chi_q|^2. The fundamental is excluded by definition.
double decoherence_factor(const shift_table& t);

}  // namespace hhq::dipole
