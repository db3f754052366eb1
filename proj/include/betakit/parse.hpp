#pragma once

// Text forms used at the CLI and Python boundaries.
//
//   polynomial:     "z^4-z^2-1", "z4-z2-1", "[-1,0,-1,0,1]" (constant first),
//                   or a multinacci name "beta2", "beta3", ...
//   field element:  arithmetic over integers, "p/q", "beta", "betaM",
//                   "[p0,p1,...]" (power basis), e.g. "2-beta2", "1-beta/2",
//                   "[1,-1]/3". "betaM" names beta^n when the defining
//                   polynomial is M_m(z^n) for the multinacci polynomial M_m.
//   rational:       "3/7", "-2", "0.0001", "1e-4"

#include <string>

#include "betakit/algebraic.hpp"

namespace betakit {

IntPoly parse_polynomial(const std::string& text);
AlgebraicNumber parse_beta(const std::string& text, BetaOptions options = {});
FieldElement parse_field_element(const std::string& text, const AlgebraicNumber& beta);
mpq_class parse_rational(const std::string& text);

/// "z^4-z^2-1" style rendering, highest degree first.
std::string polynomial_to_string(const IntPoly& p);

}  // namespace betakit
