#pragma once

// Decimal rendering of exact quantities. Every decimal comes with the width
// of the certified enclosure it was read from.

#include <string>

#include "betakit/algebraic.hpp"

namespace betakit {

/// q rounded to `digits` places after the point, ties to even.
std::string round_half_even(const mpq_class& q, int digits);

/// q rounded toward -inf (up = false) or +inf (up = true).
std::string round_directed(const mpq_class& q, int digits, bool up);

/// Upper bound of |q| in scientific notation with three significant digits,
/// or "0" when q is zero.
std::string scientific_upper(const mpq_class& q);

struct Decimal {
  std::string text;
  mpq_class width;  // 0 for rational values
};

/// Refines x until both enclosure endpoints round to the same string.
Decimal to_decimal(const FieldElement& x, int digits);

/// "p/q" for rational elements, the power-basis form otherwise.
std::string exact_string(const FieldElement& x);

}  // namespace betakit
