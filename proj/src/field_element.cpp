#include <functional>
#include <sstream>

#include "betakit/algebraic.hpp"

namespace betakit {

namespace {

mpz_class pow2(unsigned long e) {
  mpz_class r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

// Enclosure of sum num[i] beta^i, scaled by 2^bits.
void enclose(const detail::PowerTable& t, const std::vector<mpz_class>& num, mpz_class& lo,
             mpz_class& hi) {
  lo = 0;
  hi = 0;
  for (std::size_t i = 0; i < num.size(); ++i) {
    const mpz_class& c = num[i];
    if (c > 0) {
      lo += c * t.pos_lo[i];
      hi += c * t.pos_hi[i];
    } else if (c < 0) {
      lo += c * t.pos_hi[i];
      hi += c * t.pos_lo[i];
    }
  }
}

bool vanishes_at_beta(const AlgebraicNumber& beta, const std::vector<mpz_class>& num) {
  IntPoly n(num.begin(), num.end());
  RatPoly g = poly::gcd(poly::to_rational(n), poly::to_rational(beta.coefficients()));
  if (poly::degree(g) < 1) return false;
  RationalInterval iso = beta.isolate();
  return poly::count_roots(poly::sturm_sequence(g), iso.lo, iso.hi) > 0;
}

int sign_of(const AlgebraicNumber& beta, const std::vector<mpz_class>& num) {
  bool all_zero = true;
  for (const auto& c : num)
    if (c != 0) {
      all_zero = false;
      break;
    }
  if (all_zero) return 0;
  bool gcd_checked = false;
  mpz_class lo, hi;
  for (unsigned level = 0;; ++level) {
    const auto& t = beta.table(level);
    enclose(t, num, lo, hi);
    if (lo > 0) return 1;
    if (hi < 0) return -1;
    if (!gcd_checked && t.bits >= beta.options().refine_floor_bits) {
      gcd_checked = true;
      if (vanishes_at_beta(beta, num))
        throw Error(ErrorCode::RefinementCapExceeded,
                    "a nonzero field element vanishes at beta; " + beta.to_string() +
                        " is reducible");
    }
  }
}

}  // namespace

FieldElement::FieldElement(AlgebraicNumber beta)
    : beta_(std::move(beta)), num_(static_cast<std::size_t>(beta_.degree())), den_(1) {}

FieldElement::FieldElement(AlgebraicNumber beta, std::vector<mpz_class> num, mpz_class den)
    : beta_(std::move(beta)), num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw Error(ErrorCode::Usage, "zero denominator");
  canonicalize();
}

FieldElement FieldElement::integer(const AlgebraicNumber& beta, long value) {
  FieldElement r(beta);
  r.num_[0] = value;
  return r;
}

FieldElement FieldElement::rational(const AlgebraicNumber& beta, const mpq_class& value) {
  std::vector<mpz_class> num(static_cast<std::size_t>(beta.degree()));
  num[0] = value.get_num();
  return FieldElement(beta, std::move(num), value.get_den());
}

FieldElement FieldElement::generator(const AlgebraicNumber& beta) {
  std::vector<mpz_class> num(static_cast<std::size_t>(std::max(beta.degree(), 2)));
  num[1] = 1;
  return FieldElement(beta, std::move(num), 1);
}

void FieldElement::canonicalize() {
  const std::size_t d = static_cast<std::size_t>(beta_.degree());
  if (num_.size() > d) {
    IntPoly reduced = poly::remainder_monic(IntPoly(num_.begin(), num_.end()), beta_.coefficients());
    num_.assign(reduced.begin(), reduced.end());
  }
  num_.resize(d);
  if (den_ < 0) {
    den_ = -den_;
    for (auto& c : num_) c = -c;
  }
  mpz_class g = den_;
  for (const auto& c : num_) {
    if (g == 1) break;
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  }
  if (g != 1) {
    den_ /= g;
    for (auto& c : num_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
}

void FieldElement::check_field(const FieldElement& o) const {
  if (!beta_.same_field(o.beta_))
    throw Error(ErrorCode::FieldMismatch,
                "elements of Q(" + beta_.to_string() + ") and Q(" + o.beta_.to_string() + ")");
}

bool FieldElement::is_zero() const {
  for (const auto& c : num_)
    if (c != 0) return false;
  return true;
}

std::optional<mpq_class> FieldElement::as_rational() const {
  for (std::size_t i = 1; i < num_.size(); ++i)
    if (num_[i] != 0) return std::nullopt;
  mpq_class r(num_[0], den_);
  r.canonicalize();
  return r;
}

int FieldElement::sign() const { return sign_of(beta_, num_); }

FieldElement& FieldElement::operator+=(const FieldElement& o) {
  check_field(o);
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] += o.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ + o.num_[i] * den_;
    den_ *= o.den_;
  }
  canonicalize();
  return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
  check_field(o);
  if (den_ == o.den_) {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] -= o.num_[i];
  } else {
    for (std::size_t i = 0; i < num_.size(); ++i) num_[i] = num_[i] * o.den_ - o.num_[i] * den_;
    den_ *= o.den_;
  }
  canonicalize();
  return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
  check_field(o);
  const std::size_t d = num_.size();
  std::vector<mpz_class> prod(2 * d - 1);
  for (std::size_t i = 0; i < d; ++i) {
    if (num_[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) prod[i + j] += num_[i] * o.num_[j];
  }
  const IntPoly& P = beta_.coefficients();
  for (std::size_t i = 2 * d - 2; i >= d; --i) {
    if (prod[i] == 0) continue;
    mpz_class c = prod[i];
    for (std::size_t j = 0; j < d; ++j) prod[i - d + j] -= c * P[j];
    prod[i] = 0;
  }
  prod.resize(d);
  num_ = std::move(prod);
  den_ *= o.den_;
  canonicalize();
  return *this;
}

FieldElement& FieldElement::operator*=(const mpq_class& r) {
  for (auto& c : num_) c *= r.get_num();
  den_ *= r.get_den();
  canonicalize();
  return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
  check_field(o);
  return *this *= o.inverse();
}

FieldElement FieldElement::operator-() const {
  FieldElement r = *this;
  for (auto& c : r.num_) c = -c;
  return r;
}

FieldElement FieldElement::operator+(long v) const {
  FieldElement r = *this;
  r.num_[0] += den_ * v;
  r.canonicalize();
  return r;
}

FieldElement FieldElement::operator-(long v) const { return *this + (-v); }

FieldElement FieldElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::NonInvertible, "inverse of zero");
  IntPoly n(num_.begin(), num_.end());
  RatPoly s, t;
  RatPoly g = poly::xgcd(poly::to_rational(n), poly::to_rational(beta_.coefficients()), s, t);
  if (poly::degree(g) > 0)
    throw Error(ErrorCode::NonInvertible,
                "numerator shares a factor with " + beta_.to_string() + "; the quotient is not a field");
  // x = N(beta)/den, so 1/x = den * s(beta).
  mpz_class common = 1;
  for (const auto& c : s) mpz_lcm(common.get_mpz_t(), common.get_mpz_t(), c.get_den_mpz_t());
  std::vector<mpz_class> out(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) out[i] = s[i].get_num() * (common / s[i].get_den()) * den_;
  return FieldElement(beta_, std::move(out), common);
}

FieldElement FieldElement::pow(long exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  FieldElement result = integer(beta_, 1);
  FieldElement base = *this;
  while (exponent > 0) {
    if (exponent & 1) result *= base;
    exponent >>= 1;
    if (exponent) base *= base;
  }
  return result;
}

bool FieldElement::operator==(const FieldElement& o) const {
  return beta_.same_field(o.beta_) && den_ == o.den_ && num_ == o.num_;
}

std::string FieldElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < num_.size(); ++i) os << (i ? "," : "") << num_[i].get_str();
  os << "]";
  if (den_ != 1) os << "/" << den_.get_str();
  return os.str();
}

std::size_t FieldElement::hash() const {
  std::size_t h = std::hash<std::string>{}(den_.get_str(16));
  for (const auto& c : num_) {
    std::size_t v = static_cast<std::size_t>(mpz_get_si(c.get_mpz_t())) ^
                    (static_cast<std::size_t>(mpz_size(c.get_mpz_t())) << 48);
    h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

const char* to_string(Ordering o) noexcept {
  switch (o) {
    case Ordering::Less: return "Less";
    case Ordering::Equal: return "Equal";
    case Ordering::Greater: return "Greater";
  }
  return "Equal";
}

Ordering compare(const FieldElement& x, const FieldElement& y) {
  FieldElement diff = x - y;
  int s = diff.sign();
  if (s < 0) return Ordering::Less;
  if (s > 0) return Ordering::Greater;
  return Ordering::Equal;
}

RationalInterval approximate(const FieldElement& x, const mpq_class& width) {
  if (width <= 0) throw Error(ErrorCode::Usage, "approximation width must be positive");
  if (auto r = x.as_rational()) return {*r, *r};
  mpz_class lo, hi;
  for (unsigned level = 0;; ++level) {
    const auto& t = x.beta().table(level);
    enclose(t, x.numerator(), lo, hi);
    mpz_class scale = pow2(t.bits) * x.denominator();
    RationalInterval iv{mpq_class(lo, scale), mpq_class(hi, scale)};
    iv.lo.canonicalize();
    iv.hi.canonicalize();
    if (iv.width() <= width) return iv;
  }
}

double to_double(const FieldElement& x) {
  return approximate(x, mpq_class(1, 1) / pow2(64)).midpoint().get_d();
}

FieldElement abs(const FieldElement& x) { return x.sign() < 0 ? -x : x; }
FieldElement min(const FieldElement& a, const FieldElement& b) { return compare(a, b) == Ordering::Greater ? b : a; }
FieldElement max(const FieldElement& a, const FieldElement& b) { return compare(a, b) == Ordering::Less ? b : a; }

FieldElement embed_power(const FieldElement& x, const AlgebraicNumber& root_field, int n) {
  if (root_field.degree() != x.beta().degree() * n ||
      root_field.coefficients() != poly::substitute_power(x.beta().coefficients(), n))
    throw Error(ErrorCode::FieldMismatch, "target field is not generated by an n-th root of beta");
  IntPoly spread = poly::substitute_power(IntPoly(x.numerator().begin(), x.numerator().end()), n);
  return FieldElement(root_field, std::vector<mpz_class>(spread.begin(), spread.end()), x.denominator());
}

}  // namespace betakit
