#pragma once

#include <string>
#include <string_view>

#include "hhq/types.hpp"

// Locale-independent number formatting/parsing. All file output goes through
// fmt() so that a double round-trips bit-exactly through its text form
// (17 significant digits via std::to_chars).

namespace hhq::num {

std::string fmt(double v);
std::string fmt(cplx z);  // "(re,im)"

double parse_double(std::string_view tok);  // throws precondition_error
cplx parse_complex(std::string_view tok);   // expects "(re,im)"

}  // namespace hhq::num
