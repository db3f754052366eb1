#pragma once

// Dense univariate polynomials over Z and Q, constant term first.

#include <gmpxx.h>

#include <string>
#include <vector>

namespace betakit {

using IntPoly = std::vector<mpz_class>;
using RatPoly = std::vector<mpq_class>;

namespace poly {

/// Degree of p after trimming; -1 for the zero polynomial.
int degree(const IntPoly& p);
int degree(const RatPoly& p);

void trim(IntPoly& p);
void trim(RatPoly& p);

RatPoly to_rational(const IntPoly& p);

IntPoly derivative(const IntPoly& p);

/// Sign of p(x) for rational x, computed exactly.
int sign_at(const IntPoly& p, const mpq_class& x);
int sign_at(const RatPoly& p, const mpq_class& x);
mpq_class eval(const RatPoly& p, const mpq_class& x);

/// Euclidean division over Q. Throws std::domain_error on division by zero.
void divmod(const RatPoly& a, const RatPoly& b, RatPoly& quotient, RatPoly& remainder);
RatPoly remainder(const RatPoly& a, const RatPoly& b);

/// Monic gcd over Q (zero polynomial when both inputs are zero).
RatPoly gcd(const RatPoly& a, const RatPoly& b);

/// Extended gcd: s*a + t*b = g with g monic.
RatPoly xgcd(const RatPoly& a, const RatPoly& b, RatPoly& s, RatPoly& t);

RatPoly multiply(const RatPoly& a, const RatPoly& b);
IntPoly multiply(const IntPoly& a, const IntPoly& b);

/// Substitute z -> z^n.
IntPoly substitute_power(const IntPoly& p, int n);

/// Exact remainder of a modulo a monic integer polynomial.
IntPoly remainder_monic(IntPoly a, const IntPoly& monic);

bool is_square_free(const IntPoly& p);

/// Sturm sequence of a square-free polynomial.
std::vector<RatPoly> sturm_sequence(const RatPoly& p);

/// Number of distinct real roots in the half-open interval (a, b].
int count_roots(const std::vector<RatPoly>& sturm, const mpq_class& a, const mpq_class& b);

/// Human readable form such as "z^2 - z - 1".
std::string to_string(const IntPoly& p, char var = 'z');

}  // namespace poly
}  // namespace betakit
