#pragma once

#include <string>

namespace qent {

// Locale-independent decimal formatting with 12 significant digits.
std::string format_sig(double value);

// value rounded to 12 significant decimal digits (for JSON emission).
double round_sig(double value);

}  // namespace qent
