#pragma once

#include <string_view>

#include "polyreal/polynomial.hpp"

namespace polyreal {

/// Parses the text input format:
///
///   vars: z1 z2
///   4*z1^2 - 16*z1 + z2^2 - 2*z2 + 13
///   2*z1 + z2 - 7
///
/// The header fixes the variable order. One polynomial per line; '#' starts a
/// comment and blank lines are skipped. Coefficients are unsigned integers,
/// decimals ("1.25") or fractions ("3/2"); '*' between factors is optional.
/// Throws ParseError with the 1-based line and column of the offending token.
PolySystem parse_system(std::string_view text);

}  // namespace polyreal
