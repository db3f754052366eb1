#pragma once

// Exact arithmetic in Q(beta) for a real algebraic integer beta in (1,2).
//
// An AlgebraicNumber is a cheap handle: copies share one refinement state
// whose isolating interval only ever shrinks. Refinement is serialized by a
// mutex inside that state, so handles can be shared between threads.

#include <gmpxx.h>

#include <compare>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "betakit/errors.hpp"
#include "betakit/polynomial.hpp"

namespace betakit {

struct RationalInterval {
  mpq_class lo;
  mpq_class hi;

  mpq_class width() const { return hi - lo; }
  mpq_class midpoint() const { return (lo + hi) / 2; }
  bool contains(const mpq_class& x) const { return lo <= x && x <= hi; }
};

namespace detail {
struct BetaState;

// Fixed-point enclosures of beta^i (i = 0..d-1) and beta^-i (i = 1..d),
// all scaled by 2^bits: pos_lo[i] <= beta^i * 2^bits <= pos_hi[i].
struct PowerTable {
  unsigned bits = 0;
  std::vector<mpz_class> pos_lo, pos_hi;
  std::vector<mpz_class> neg_lo, neg_hi;  // index i holds beta^-(i+1)
};
}  // namespace detail

struct BetaOptions {
  // Isolating-interval width floor 2^-refine_floor_bits; past it vanishing is
  // decided by a gcd against the defining polynomial.
  unsigned refine_floor_bits = 4096;
  unsigned initial_width_bits = 20;
  // Newton/Aberth rounds before a conjugate is reported as uncertified.
  unsigned certify_rounds = 4;
};

enum class NumberTag { Pisot, Salem, PerronOnly, Other };
const char* to_string(NumberTag tag) noexcept;

struct ConjugateBound {
  double re = 0;  // approximate location, informational only
  double im = 0;
  mpq_class modulus_lo;
  mpq_class modulus_hi;
  bool unit_modulus = false;  // certified |gamma| == 1
};

struct NumberClass {
  NumberTag tag = NumberTag::Other;
  std::vector<ConjugateBound> conjugate_bounds;
  std::string diagnostic;  // non-empty when certification failed
};

class AlgebraicNumber {
 public:
  const IntPoly& coefficients() const;
  int degree() const;
  const BetaOptions& options() const;

  /// Current isolating interval; it only shrinks over the handle's lifetime.
  RationalInterval isolate() const;
  /// Shrinks the isolating interval to width <= 2^-bits.
  void refine(unsigned bits) const;

  /// Power enclosures at precision 64 << level bits.
  const detail::PowerTable& table(unsigned level) const;

  /// Certified arithmetic classification, computed once per handle family.
  const NumberClass& number_class() const;

  double approx() const;
  std::string to_string() const;

  /// Same defining polynomial (and therefore the same field and generator).
  bool same_field(const AlgebraicNumber& other) const;
  bool operator==(const AlgebraicNumber& other) const { return same_field(other); }

 private:
  friend AlgebraicNumber make_beta(IntPoly coeffs, BetaOptions options);
  explicit AlgebraicNumber(std::shared_ptr<detail::BetaState> state) : state_(std::move(state)) {}
  std::shared_ptr<detail::BetaState> state_;
};

/// Validates a monic integer polynomial (constant term first) and isolates its
/// unique root in (1,2). Throws NoRootInRange, MultipleRootsInRange or
/// NotSquareFree.
AlgebraicNumber make_beta(IntPoly coeffs, BetaOptions options = {});

NumberClass classify(const AlgebraicNumber& beta);

class FieldElement {
 public:
  /// Zero of Q(beta).
  explicit FieldElement(AlgebraicNumber beta);
  /// (sum num[i] beta^i) / den, canonicalized. num may be longer than the
  /// degree; it is reduced modulo the defining polynomial.
  FieldElement(AlgebraicNumber beta, std::vector<mpz_class> num, mpz_class den = 1);

  static FieldElement integer(const AlgebraicNumber& beta, long value);
  static FieldElement rational(const AlgebraicNumber& beta, const mpq_class& value);
  static FieldElement generator(const AlgebraicNumber& beta);

  const AlgebraicNumber& beta() const { return beta_; }
  const std::vector<mpz_class>& numerator() const { return num_; }
  const mpz_class& denominator() const { return den_; }

  bool is_zero() const;
  std::optional<mpq_class> as_rational() const;

  /// Sign of the real value. Throws RefinementCapExceeded only when the
  /// defining polynomial turns out to be reducible.
  int sign() const;

  FieldElement inverse() const;
  FieldElement pow(long exponent) const;

  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);
  FieldElement& operator*=(const mpq_class& r);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend FieldElement operator*(FieldElement a, const mpq_class& r) { return a *= r; }
  friend FieldElement operator*(const mpq_class& r, FieldElement a) { return a *= r; }
  FieldElement operator-() const;

  FieldElement operator+(long v) const;
  FieldElement operator-(long v) const;
  friend FieldElement operator-(long v, const FieldElement& a) { return -a + v; }
  friend FieldElement operator+(long v, const FieldElement& a) { return a + v; }

  /// Exact equality of canonical forms.
  bool operator==(const FieldElement& o) const;

  /// "[p0,p1,...]/q", or "[p0,...]" when q == 1.
  std::string to_string() const;
  std::size_t hash() const;

 private:
  void canonicalize();
  void check_field(const FieldElement& o) const;

  AlgebraicNumber beta_;
  std::vector<mpz_class> num_;
  mpz_class den_;
};

enum class Ordering { Less, Equal, Greater };
const char* to_string(Ordering o) noexcept;

Ordering compare(const FieldElement& x, const FieldElement& y);

inline std::strong_ordering operator<=>(const FieldElement& x, const FieldElement& y) {
  switch (compare(x, y)) {
    case Ordering::Less: return std::strong_ordering::less;
    case Ordering::Greater: return std::strong_ordering::greater;
    default: return std::strong_ordering::equal;
  }
}

/// Interval of width <= width certifiably containing the value of x.
RationalInterval approximate(const FieldElement& x, const mpq_class& width);

double to_double(const FieldElement& x);
FieldElement abs(const FieldElement& x);
FieldElement min(const FieldElement& a, const FieldElement& b);
FieldElement max(const FieldElement& a, const FieldElement& b);

/// Image of x under beta -> gamma^n, where gamma generates the field of the
/// n-th root (defining polynomial P(z^n)).
FieldElement embed_power(const FieldElement& x, const AlgebraicNumber& root_field, int n);

struct FieldElementHash {
  std::size_t operator()(const FieldElement& x) const { return x.hash(); }
};

}  // namespace betakit
