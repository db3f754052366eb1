#include "betakit/format.hpp"

#include <string>

namespace betakit {

namespace {

mpz_class ten_pow(int digits) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(digits));
  return p;
}

std::string place_point(const mpz_class& scaled, int digits) {
  bool neg = scaled < 0;
  std::string s = mpz_class(abs(scaled)).get_str();
  if (digits > 0) {
    if (static_cast<int>(s.size()) <= digits) s.insert(0, static_cast<std::size_t>(digits + 1) - s.size(), '0');
    s.insert(s.size() - static_cast<std::size_t>(digits), ".");
  }
  return neg ? "-" + s : s;
}

mpz_class floor_of(const mpq_class& q) {
  mpz_class f;
  mpz_fdiv_q(f.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return f;
}

}  // namespace

std::string round_half_even(const mpq_class& q, int digits) {
  mpq_class scaled = q * ten_pow(digits);
  mpz_class f = floor_of(scaled);
  mpq_class frac = scaled - f;
  if (frac > mpq_class(1, 2) || (frac == mpq_class(1, 2) && mpz_odd_p(f.get_mpz_t()))) ++f;
  return place_point(f, digits);
}

std::string round_directed(const mpq_class& q, int digits, bool up) {
  mpq_class scaled = q * ten_pow(digits);
  mpz_class f = floor_of(scaled);
  if (up && mpq_class(f) != scaled) ++f;
  return place_point(f, digits);
}

std::string scientific_upper(const mpq_class& q) {
  if (q == 0) return "0";
  mpq_class a = abs(q);
  long e = static_cast<long>(mpz_sizeinbase(a.get_num_mpz_t(), 10)) -
           static_cast<long>(mpz_sizeinbase(a.get_den_mpz_t(), 10));
  // Three-digit mantissa m = ceil(a * 10^(2-e)) with 100 <= m < 1000.
  for (;;) {
    mpq_class scaled = a;
    if (e <= 2)
      scaled *= ten_pow(static_cast<int>(2 - e));
    else
      scaled /= ten_pow(static_cast<int>(e - 2));
    mpz_class m;
    mpz_cdiv_q(m.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
    if (m >= 1000) {
      ++e;
    } else if (m < 100) {
      --e;
    } else {
      auto s = m.get_str();
      return s.substr(0, 1) + "." + s.substr(1) + "e" + std::to_string(e);
    }
  }
}

Decimal to_decimal(const FieldElement& x, int digits) {
  if (auto q = x.as_rational()) return {round_half_even(*q, digits), 0};
  mpq_class width(1, ten_pow(digits + 2));
  for (;;) {
    auto e = approximate(x, width);
    auto lo = round_half_even(e.lo, digits), hi = round_half_even(e.hi, digits);
    if (lo == hi) return {lo, e.hi - e.lo};
    width /= 10000;
  }
}

std::string exact_string(const FieldElement& x) {
  if (auto q = x.as_rational()) return q->get_str();
  return x.to_string();
}

}  // namespace betakit
