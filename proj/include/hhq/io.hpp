#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "hhq/dipole.hpp"
#include "hhq/fock.hpp"
#include "hhq/phase_grid.hpp"
#include "hhq/states.hpp"
#include "hhq/types.hpp"

// Text formats for everything the CLI reads and writes. All numbers go
// through hhq::num::fmt (17 significant digits, locale-free), so identical
// inputs produce byte-identical files and round trips are bit-exact.

namespace hhq::io {

// Two-column waveform text (time, dipole value); '#' headers; uniform
// spacing validated to `spacing_rel_tol` relative.
dipole::dipole_waveform parse_waveform(std::string_view text,
                                       double spacing_rel_tol = 1e-9);

// Flat key-value shift table:
//   kappa <v> / omega <v> / N <n> / q<k>.chi_re, q<k>.chi_im, q<k>.phi
std::string format_shift_table(const dipole::shift_table& t);
dipole::shift_table parse_shift_table(std::string_view text);

// '#'-prefixed header (center, radius, step, axis points), then row-major
// values, one grid row per line.
std::string format_phase_grid(const phase_grid& g, std::string_view title);

// Label, provenance parameters, embedded shift table and state serialization.
std::string format_named_state(const states::named_state& s);

std::string format_fock_vector(const fock::fock_vector& v, std::string_view title);

std::string sha256_hex(std::string_view data);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view content);

}  // namespace hhq::io
