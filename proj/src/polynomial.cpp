#include "betakit/polynomial.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace betakit::poly {

int degree(const IntPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

int degree(const RatPoly& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i)
    if (p[i] != 0) return i;
  return -1;
}

void trim(IntPoly& p) { p.resize(static_cast<std::size_t>(degree(p) + 1)); }
void trim(RatPoly& p) { p.resize(static_cast<std::size_t>(degree(p) + 1)); }

RatPoly to_rational(const IntPoly& p) {
  RatPoly r(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) r[i] = p[i];
  return r;
}

IntPoly derivative(const IntPoly& p) {
  if (p.size() <= 1) return {};
  IntPoly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<unsigned long>(i);
  trim(d);
  return d;
}

int sign_at(const IntPoly& p, const mpq_class& x) {
  // p(a/b) * b^deg = sum c_i a^i b^(deg-i); b > 0 keeps the sign.
  const int n = degree(p);
  if (n < 0) return 0;
  const mpz_class& a = x.get_num();
  const mpz_class& b = x.get_den();
  mpz_class acc = p[n];
  mpz_class bpow = 1;
  for (int i = n - 1; i >= 0; --i) {
    bpow *= b;
    acc = acc * a + p[i] * bpow;
  }
  return sgn(acc);
}

mpq_class eval(const RatPoly& p, const mpq_class& x) {
  mpq_class acc = 0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

int sign_at(const RatPoly& p, const mpq_class& x) { return sgn(eval(p, x)); }

void divmod(const RatPoly& a, const RatPoly& b, RatPoly& quotient, RatPoly& rem) {
  const int db = degree(b);
  if (db < 0) throw std::domain_error("polynomial division by zero");
  rem = a;
  trim(rem);
  const int da = degree(rem);
  quotient.assign(da >= db ? static_cast<std::size_t>(da - db + 1) : 0, mpq_class(0));
  const mpq_class lead = b[db];
  for (int i = da; i >= db; --i) {
    if (rem[i] == 0) continue;
    mpq_class c = rem[i] / lead;
    quotient[i - db] = c;
    for (int j = 0; j <= db; ++j) rem[i - db + j] -= c * b[j];
  }
  trim(rem);
  trim(quotient);
}

RatPoly remainder(const RatPoly& a, const RatPoly& b) {
  RatPoly q, r;
  divmod(a, b, q, r);
  return r;
}

static void make_monic(RatPoly& p) {
  trim(p);
  if (p.empty()) return;
  mpq_class lead = p.back();
  for (auto& c : p) c /= lead;
}

RatPoly gcd(const RatPoly& a, const RatPoly& b) {
  RatPoly x = a, y = b;
  trim(x);
  trim(y);
  while (!y.empty()) {
    RatPoly r = remainder(x, y);
    x = std::move(y);
    y = std::move(r);
  }
  make_monic(x);
  return x;
}

static RatPoly sub(const RatPoly& a, const RatPoly& b) {
  RatPoly r(std::max(a.size(), b.size()), mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] -= b[i];
  trim(r);
  return r;
}

RatPoly multiply(const RatPoly& a, const RatPoly& b) {
  if (a.empty() || b.empty()) return {};
  RatPoly r(a.size() + b.size() - 1, mpq_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

IntPoly multiply(const IntPoly& a, const IntPoly& b) {
  if (a.empty() || b.empty()) return {};
  IntPoly r(a.size() + b.size() - 1, mpz_class(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  trim(r);
  return r;
}

RatPoly xgcd(const RatPoly& a, const RatPoly& b, RatPoly& s, RatPoly& t) {
  RatPoly r0 = a, r1 = b;
  trim(r0);
  trim(r1);
  RatPoly s0{mpq_class(1)}, s1{};
  RatPoly t0{}, t1{mpq_class(1)};
  while (!r1.empty()) {
    RatPoly q, r;
    divmod(r0, r1, q, r);
    RatPoly s2 = sub(s0, multiply(q, s1));
    RatPoly t2 = sub(t0, multiply(q, t1));
    r0 = std::move(r1);
    r1 = std::move(r);
    s0 = std::move(s1);
    s1 = std::move(s2);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (!r0.empty()) {
    mpq_class lead = r0.back();
    for (auto& c : r0) c /= lead;
    for (auto& c : s0) c /= lead;
    for (auto& c : t0) c /= lead;
  }
  s = std::move(s0);
  t = std::move(t0);
  return r0;
}

IntPoly substitute_power(const IntPoly& p, int n) {
  if (p.empty()) return {};
  IntPoly r((p.size() - 1) * static_cast<std::size_t>(n) + 1, mpz_class(0));
  for (std::size_t i = 0; i < p.size(); ++i) r[i * static_cast<std::size_t>(n)] = p[i];
  return r;
}

IntPoly remainder_monic(IntPoly a, const IntPoly& monic) {
  const int d = degree(monic);
  trim(a);
  for (int i = static_cast<int>(a.size()) - 1; i >= d; --i) {
    if (a[i] == 0) continue;
    mpz_class c = a[i];
    for (int j = 0; j < d; ++j) a[i - d + j] -= c * monic[j];
    a[i] = 0;
  }
  trim(a);
  return a;
}

bool is_square_free(const IntPoly& p) {
  RatPoly g = gcd(to_rational(p), to_rational(derivative(p)));
  return degree(g) <= 0;
}

std::vector<RatPoly> sturm_sequence(const RatPoly& p) {
  std::vector<RatPoly> seq;
  RatPoly a = p;
  trim(a);
  if (a.empty()) return seq;
  RatPoly d(a.size() > 1 ? a.size() - 1 : 0);
  for (std::size_t i = 1; i < a.size(); ++i) d[i - 1] = a[i] * static_cast<unsigned long>(i);
  trim(d);
  seq.push_back(a);
  if (d.empty()) return seq;
  seq.push_back(d);
  while (true) {
    RatPoly r = remainder(seq[seq.size() - 2], seq.back());
    if (r.empty()) break;
    for (auto& c : r) c = -c;
    // positive rescaling preserves sign variations
    mpq_class lead = abs(r.back());
    for (auto& c : r) c /= lead;
    seq.push_back(std::move(r));
  }
  return seq;
}

static int variations(const std::vector<RatPoly>& seq, const mpq_class& x) {
  int count = 0;
  int last = 0;
  for (const auto& p : seq) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (last != 0 && s != last) ++count;
    last = s;
  }
  return count;
}

int count_roots(const std::vector<RatPoly>& sturm, const mpq_class& a, const mpq_class& b) {
  if (sturm.empty()) return 0;
  return variations(sturm, a) - variations(sturm, b);
}

std::string to_string(const IntPoly& p, char var) {
  std::ostringstream os;
  const int n = degree(p);
  if (n < 0) return "0";
  bool first = true;
  for (int i = n; i >= 0; --i) {
    if (p[i] == 0) continue;
    mpz_class c = p[i];
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    mpz_class ac = abs(c);
    if (ac != 1 || i == 0) os << ac.get_str();
    if (i >= 1) os << var;
    if (i > 1) os << "^" << i;
    first = false;
  }
  return os.str();
}

}  // namespace betakit::poly
