#include "betakit/algebraic.hpp"

#include <mutex>
#include <sstream>

namespace betakit {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Usage: return "Usage";
    case ErrorCode::Parse: return "Parse";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NoRootInRange: return "NoRootInRange";
    case ErrorCode::MultipleRootsInRange: return "MultipleRootsInRange";
    case ErrorCode::NotSquareFree: return "NotSquareFree";
    case ErrorCode::NonInvertible: return "NonInvertible";
    case ErrorCode::RefinementCapExceeded: return "RefinementCapExceeded";
    case ErrorCode::OutOfDomain: return "OutOfDomain";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::PisotGuaranteeViolated: return "PisotGuaranteeViolated";
    case ErrorCode::NotSoficInput: return "NotSoficInput";
    case ErrorCode::StateGuardExceeded: return "StateGuardExceeded";
    case ErrorCode::NotFound: return "NotFound";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::BetaOutOfRange: return "BetaOutOfRange";
    case ErrorCode::ExperimentalRegionHit: return "ExperimentalRegionHit";
    case ErrorCode::OutOfRegion: return "OutOfRegion";
  }
  return "Unknown";
}

const char* to_string(NumberTag tag) noexcept {
  switch (tag) {
    case NumberTag::Pisot: return "Pisot";
    case NumberTag::Salem: return "Salem";
    case NumberTag::PerronOnly: return "PerronOnly";
    case NumberTag::Other: return "Other";
  }
  return "Other";
}

namespace detail {

struct BetaState {
  IntPoly poly;
  int degree = 0;
  BetaOptions options;

  std::mutex mu;
  // beta lies strictly inside (lo_num, lo_num + 1) / 2^exponent.
  mpz_class lo_num;
  unsigned long exponent = 0;
  int sign_lo = 0;
  std::vector<std::unique_ptr<PowerTable>> tables;

  std::once_flag class_once;
  NumberClass number_class;

  void bisect_locked() {
    mpz_class mid = 2 * lo_num + 1;
    ++exponent;
    mpq_class m(mid, 1);
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, exponent);
    m /= scale;
    int s = poly::sign_at(poly, m);
    // The midpoint is a non-integer dyadic, so s != 0 for a monic integer P.
    if (s == sign_lo)
      lo_num = mid;
    else
      lo_num = mid - 1;
  }

  void refine_locked(unsigned bits) {
    while (exponent < bits) bisect_locked();
  }

  RationalInterval interval_locked() const {
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 2, exponent);
    return {mpq_class(lo_num, scale), mpq_class(lo_num + 1, scale)};
  }
};

}  // namespace detail

namespace {

mpq_class dyadic(const mpz_class& num, unsigned long exponent) {
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 2, exponent);
  return mpq_class(num, scale);
}

}  // namespace

AlgebraicNumber make_beta(IntPoly coeffs, BetaOptions options) {
  poly::trim(coeffs);
  const int d = poly::degree(coeffs);
  if (d < 1) throw Error(ErrorCode::Usage, "defining polynomial must have degree >= 1");
  if (coeffs[d] != 1) throw Error(ErrorCode::Usage, "defining polynomial must be monic");
  if (!poly::is_square_free(coeffs))
    throw Error(ErrorCode::NotSquareFree, poly::to_string(coeffs) + " has a repeated factor");
  if (coeffs[0] == 0)
    throw Error(ErrorCode::NotSquareFree,
                poly::to_string(coeffs) + " is divisible by z and cannot be a minimal polynomial");

  // Roots at the excluded endpoints 1 and 2 are divided out before counting.
  RatPoly counted = poly::to_rational(coeffs);
  for (int endpoint : {1, 2}) {
    if (poly::sign_at(coeffs, mpq_class(endpoint)) == 0) {
      RatPoly q, r;
      poly::divmod(counted, RatPoly{mpq_class(-endpoint), mpq_class(1)}, q, r);
      counted = q;
    }
  }
  auto sturm = poly::sturm_sequence(counted);
  int roots = poly::count_roots(sturm, mpq_class(1), mpq_class(2));
  if (roots == 0)
    throw Error(ErrorCode::NoRootInRange, poly::to_string(coeffs) + " has no root in (1,2)");
  if (roots > 1)
    throw Error(ErrorCode::MultipleRootsInRange,
                poly::to_string(coeffs) + " has " + std::to_string(roots) + " roots in (1,2)");

  auto state = std::make_shared<detail::BetaState>();
  state->poly = coeffs;
  state->degree = d;
  state->options = options;
  state->lo_num = 1;
  state->exponent = 0;

  // Bisect by root counting until neither endpoint is an integer.
  while (state->exponent == 0 || dyadic(state->lo_num, state->exponent) == 1 ||
         dyadic(state->lo_num + 1, state->exponent) == 2) {
    mpz_class mid = 2 * state->lo_num + 1;
    unsigned long e = state->exponent + 1;
    if (poly::count_roots(sturm, dyadic(2 * state->lo_num, e), dyadic(mid, e)) == 1)
      state->lo_num = 2 * state->lo_num;
    else
      state->lo_num = mid;
    state->exponent = e;
  }
  state->sign_lo = poly::sign_at(coeffs, dyadic(state->lo_num, state->exponent));
  state->refine_locked(options.initial_width_bits);
  return AlgebraicNumber(std::move(state));
}

const IntPoly& AlgebraicNumber::coefficients() const { return state_->poly; }
int AlgebraicNumber::degree() const { return state_->degree; }
const BetaOptions& AlgebraicNumber::options() const { return state_->options; }

RationalInterval AlgebraicNumber::isolate() const {
  std::lock_guard lock(state_->mu);
  return state_->interval_locked();
}

void AlgebraicNumber::refine(unsigned bits) const {
  std::lock_guard lock(state_->mu);
  state_->refine_locked(bits);
}

const detail::PowerTable& AlgebraicNumber::table(unsigned level) const {
  auto& s = *state_;
  std::lock_guard lock(s.mu);
  while (s.tables.size() <= level) {
    const unsigned bits = 64u << s.tables.size();
    const int d = s.degree;
    s.refine_locked(bits + static_cast<unsigned>(2 * d) + 16);
    const mpz_class L = s.lo_num;
    const mpz_class U = s.lo_num + 1;
    const unsigned long k = s.exponent;

    auto t = std::make_unique<detail::PowerTable>();
    t->bits = bits;
    t->pos_lo.resize(d);
    t->pos_hi.resize(d);
    t->neg_lo.resize(d);
    t->neg_hi.resize(d);
    mpz_class lp = 1, up = 1;
    for (int i = 0; i < d; ++i) {
      // beta^i in [L^i, U^i] / 2^(k i)
      long shift = static_cast<long>(k) * i - static_cast<long>(bits);
      if (shift <= 0) {
        t->pos_lo[i] = lp << static_cast<unsigned long>(-shift);
        t->pos_hi[i] = up << static_cast<unsigned long>(-shift);
      } else {
        mpz_fdiv_q_2exp(t->pos_lo[i].get_mpz_t(), lp.get_mpz_t(), static_cast<unsigned long>(shift));
        mpz_cdiv_q_2exp(t->pos_hi[i].get_mpz_t(), up.get_mpz_t(), static_cast<unsigned long>(shift));
      }
      lp *= L;
      up *= U;
    }
    lp = L;
    up = U;
    for (int i = 0; i < d; ++i) {
      // beta^-(i+1) in [2^(k(i+1)) / U^(i+1), 2^(k(i+1)) / L^(i+1)]
      mpz_class num;
      mpz_ui_pow_ui(num.get_mpz_t(), 2, k * static_cast<unsigned long>(i + 1) + bits);
      mpz_fdiv_q(t->neg_lo[i].get_mpz_t(), num.get_mpz_t(), up.get_mpz_t());
      mpz_cdiv_q(t->neg_hi[i].get_mpz_t(), num.get_mpz_t(), lp.get_mpz_t());
      lp *= L;
      up *= U;
    }
    s.tables.push_back(std::move(t));
  }
  return *s.tables[level];
}

const NumberClass& AlgebraicNumber::number_class() const {
  std::call_once(state_->class_once, [this] { state_->number_class = classify(*this); });
  return state_->number_class;
}

double AlgebraicNumber::approx() const { return isolate().midpoint().get_d(); }

std::string AlgebraicNumber::to_string() const { return poly::to_string(state_->poly); }

bool AlgebraicNumber::same_field(const AlgebraicNumber& other) const {
  return state_ == other.state_ || state_->poly == other.state_->poly;
}

}  // namespace betakit
