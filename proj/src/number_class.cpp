#include <cmath>
#include <complex>
#include <sstream>

#include "betakit/algebraic.hpp"

namespace betakit {

namespace {

using cld = std::complex<long double>;

// Simultaneous Aberth iteration in extended precision; only a starting point
// for the multiprecision polish below.
std::vector<cld> aberth(const IntPoly& P) {
  const int d = poly::degree(P);
  std::vector<long double> c(d + 1);
  for (int i = 0; i <= d; ++i) c[i] = static_cast<long double>(P[i].get_d());
  auto eval = [&](cld z, cld& dp) {
    cld v = c[d];
    dp = 0;
    for (int i = d - 1; i >= 0; --i) {
      dp = dp * z + v;
      v = v * z + c[i];
    }
    return v;
  };
  long double bound = 0;
  for (int i = 0; i < d; ++i) bound = std::max(bound, std::fabs(c[i]));
  bound += 1;
  std::vector<cld> z(d);
  for (int i = 0; i < d; ++i)
    z[i] = std::polar(0.5L * bound, 2 * 3.14159265358979323846L * i / d + 0.4L);
  for (int iter = 0; iter < 500; ++iter) {
    long double change = 0;
    for (int i = 0; i < d; ++i) {
      cld dp;
      cld v = eval(z[i], dp);
      if (v == cld(0)) continue;
      cld ratio = v / dp;
      cld sum = 0;
      for (int j = 0; j < d; ++j)
        if (j != i) sum += 1.0L / (z[i] - z[j]);
      cld w = ratio / (1.0L - ratio * sum);
      z[i] -= w;
      change = std::max(change, std::abs(w) / std::max(1.0L, std::abs(z[i])));
    }
    if (change < 1e-17L) break;
  }
  return z;
}

struct MpComplex {
  mpf_class re, im;
};

struct QComplex {
  mpq_class re, im;
  mpq_class norm() const { return re * re + im * im; }
};

QComplex qmul(const QComplex& a, const QComplex& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

QComplex qsub(const QComplex& a, const QComplex& b) { return {a.re - b.re, a.im - b.im}; }

QComplex qeval(const IntPoly& P, const QComplex& z) {
  const int d = poly::degree(P);
  QComplex v{mpq_class(P[d]), 0};
  for (int i = d - 1; i >= 0; --i) {
    v = qmul(v, z);
    v.re += P[i];
  }
  return v;
}

// Durand-Kerner polish at the given binary precision.
std::vector<MpComplex> polish(const IntPoly& P, const std::vector<cld>& start, unsigned bits) {
  const int d = poly::degree(P);
  std::vector<MpComplex> z(d);
  for (int i = 0; i < d; ++i) {
    z[i].re = mpf_class(static_cast<double>(start[i].real()), bits);
    z[i].im = mpf_class(static_cast<double>(start[i].imag()), bits);
  }
  const unsigned iterations = 8 + static_cast<unsigned>(std::log2(bits));
  for (unsigned it = 0; it < iterations; ++it) {
    for (int i = 0; i < d; ++i) {
      mpf_class vr(P[d], bits), vi(0, bits);
      for (int k = d - 1; k >= 0; --k) {
        mpf_class nr = vr * z[i].re - vi * z[i].im + mpf_class(P[k], bits);
        mpf_class ni = vr * z[i].im + vi * z[i].re;
        vr = nr;
        vi = ni;
      }
      mpf_class qr(1, bits), qi(0, bits);
      for (int j = 0; j < d; ++j) {
        if (j == i) continue;
        mpf_class dr = z[i].re - z[j].re, di = z[i].im - z[j].im;
        mpf_class nr = qr * dr - qi * di;
        mpf_class ni = qr * di + qi * dr;
        qr = nr;
        qi = ni;
      }
      mpf_class den = qr * qr + qi * qi;
      if (den == 0) continue;
      z[i].re -= (vr * qr + vi * qi) / den;
      z[i].im -= (vi * qr - vr * qi) / den;
    }
  }
  return z;
}

mpq_class to_q(const mpf_class& x) { return mpq_class(x); }

// Rational bounds on sqrt(a) for a >= 0 with 2^-bits accuracy.
mpq_class sqrt_bound(const mpq_class& a, unsigned bits, bool upper) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, 2 * bits);
  mpz_class n = a.get_num() * scale;
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), a.get_den_mpz_t());
  mpz_class r;
  mpz_sqrt(r.get_mpz_t(), q.get_mpz_t());
  if (upper) r += 1;
  mpz_class s;
  mpz_ui_pow_ui(s.get_mpz_t(), 2, bits);
  mpq_class out(r, s);
  out.canonicalize();
  return out;
}

struct Disc {
  QComplex c;
  mpq_class R;  // rational upper bound on the radius
};

bool discs_disjoint(const Disc& a, const Disc& b) {
  mpq_class s = a.R + b.R;
  return qsub(a.c, b.c).norm() > s * s;
}

enum class Certainty { Below, Above, Unknown };

bool minus_beta_is_root(const AlgebraicNumber& beta) {
  IntPoly reflected = beta.coefficients();
  for (std::size_t i = 1; i < reflected.size(); i += 2) reflected[i] = -reflected[i];
  IntPoly r = poly::remainder_monic(reflected, beta.coefficients());
  // P(-z) mod P vanishes at beta iff the reduced vector is zero, or it shares
  // a factor with P through beta (impossible when P is minimal).
  std::vector<mpz_class> num(r.begin(), r.end());
  num.resize(static_cast<std::size_t>(beta.degree()));
  return FieldElement(beta, num).is_zero();
}

}  // namespace

NumberClass classify(const AlgebraicNumber& beta) {
  const IntPoly& P = beta.coefficients();
  const int d = beta.degree();
  NumberClass out;
  if (d == 1) {
    out.tag = NumberTag::Pisot;
    return out;
  }
  const bool reciprocal = [&] {
    bool plus = true, minus = true;
    for (int i = 0; i <= d; ++i) {
      if (P[i] != P[d - i]) plus = false;
      if (P[i] != -P[d - i]) minus = false;
    }
    return plus || minus;
  }();
  const bool opposite_root = minus_beta_is_root(beta);

  std::vector<cld> start = aberth(P);
  std::string diagnostic;
  const unsigned rounds = std::max(1u, beta.options().certify_rounds);
  for (unsigned round = 0; round < rounds; ++round) {
    const unsigned bits = 192u << round;
    auto approx = polish(P, start, bits);
    std::vector<Disc> discs(d);
    for (int i = 0; i < d; ++i) discs[i].c = {to_q(approx[i].re), to_q(approx[i].im)};
    bool degenerate = false;
    for (int i = 0; i < d && !degenerate; ++i) {
      mpq_class prod_norm = 1;
      for (int j = 0; j < d; ++j)
        if (j != i) prod_norm *= qsub(discs[i].c, discs[j].c).norm();
      if (prod_norm == 0) {
        degenerate = true;
        break;
      }
      mpq_class r2 = mpq_class(d * d) * qeval(P, discs[i].c).norm() / prod_norm;
      discs[i].R = sqrt_bound(r2, bits + 32, true);
    }
    if (degenerate) {
      diagnostic = "root approximations collided";
      continue;
    }
    bool separated = true;
    for (int i = 0; i < d && separated; ++i)
      for (int j = i + 1; j < d; ++j)
        if (!discs_disjoint(discs[i], discs[j])) {
          separated = false;
          break;
        }
    if (!separated) {
      diagnostic = "root inclusion discs overlap";
      continue;
    }

    beta.refine(bits / 2);
    RationalInterval iso = beta.isolate();
    int beta_index = -1, hits = 0;
    for (int i = 0; i < d; ++i) {
      const Disc& D = discs[i];
      mpq_class dx = 0;
      if (D.c.re < iso.lo) dx = iso.lo - D.c.re;
      if (D.c.re > iso.hi) dx = D.c.re - iso.hi;
      if (dx * dx + D.c.im * D.c.im <= D.R * D.R) {
        beta_index = i;
        ++hits;
      }
    }
    if (hits != 1) {
      diagnostic = "could not match beta to a single inclusion disc";
      continue;
    }

    out.conjugate_bounds.clear();
    bool all_decided = true;
    bool all_below_one = true, all_at_most_one = true, any_unit = false, all_below_beta = true;
    for (int i = 0; i < d; ++i) {
      if (i == beta_index) continue;
      const Disc& D = discs[i];
      ConjugateBound cb;
      cb.re = approx[i].re.get_d();
      cb.im = approx[i].im.get_d();
      mpq_class cn = D.c.norm();
      mpq_class cm_lo = sqrt_bound(cn, bits + 32, false);
      mpq_class cm_hi = sqrt_bound(cn, bits + 32, true);
      cb.modulus_lo = cm_lo - D.R;
      if (cb.modulus_lo < 0) cb.modulus_lo = 0;
      cb.modulus_hi = cm_hi + D.R;

      if (reciprocal && cb.modulus_lo <= 1 && cb.modulus_hi >= 1 && cn > D.R * D.R) {
        // Reflection z -> 1/conj(z) permutes the roots; a disc whose mirror
        // meets no other disc holds a root fixed by it, i.e. |z| = 1.
        mpq_class k = cn - D.R * D.R;
        Disc mirror{{D.c.re / k, D.c.im / k}, D.R / k};
        bool only_self = true;
        for (int j = 0; j < d; ++j)
          if (j != i && !discs_disjoint(mirror, discs[j])) only_self = false;
        if (only_self) {
          cb.unit_modulus = true;
          cb.modulus_lo = 1;
          cb.modulus_hi = 1;
        }
      }

      if (cb.unit_modulus) {
        all_below_one = false;
        any_unit = true;
      } else if (cb.modulus_hi < 1) {
      } else {
        all_below_one = false;
        if (cb.modulus_lo > 1)
          all_at_most_one = false;
        else
          all_decided = false;
      }
      if (!(cb.modulus_hi < iso.lo)) {
        bool is_opposite = opposite_root && D.c.re < 0 && D.c.im * D.c.im <= D.R * D.R;
        if (is_opposite || cb.modulus_lo > iso.hi)
          all_below_beta = false;
        else if (all_below_beta)
          all_decided = false;
      }
      out.conjugate_bounds.push_back(std::move(cb));
    }

    if (all_below_one) {
      out.tag = NumberTag::Pisot;
      out.diagnostic.clear();
      return out;
    }
    if (all_at_most_one && any_unit && all_decided) {
      out.tag = NumberTag::Salem;
      out.diagnostic.clear();
      return out;
    }
    if (all_decided) {
      out.tag = all_below_beta ? NumberTag::PerronOnly : NumberTag::Other;
      out.diagnostic.clear();
      return out;
    }
    diagnostic = "a conjugate modulus could not be separated from 1 or from beta";
  }
  out.tag = NumberTag::Other;
  std::ostringstream os;
  os << diagnostic << " after " << rounds << " precision rounds";
  out.diagnostic = os.str();
  return out;
}

}  // namespace betakit
