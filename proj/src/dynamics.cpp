#include "betakit/dynamics.hpp"

#include <algorithm>
#include <cstdint>
#include <cstdlib>

namespace betakit {

const char* to_string(Side s) noexcept { return s == Side::Plus ? "plus" : "minus"; }

SystemParams SystemParams::make(const AlgebraicNumber& beta, const FieldElement& alpha) {
  if (!alpha.beta().same_field(beta))
    throw Error(ErrorCode::FieldMismatch, "alpha is not an element of Q(" + beta.to_string() + ")");
  auto one = FieldElement::integer(beta, 1);
  auto b = FieldElement::generator(beta);
  if (alpha.sign() < 0 || compare(alpha, 2 - b) == Ordering::Greater)
    throw Error(ErrorCode::OutOfDomain, "alpha must lie in [0, 2 - beta]");
  auto bm1 = (b - 1).inverse();
  return SystemParams{beta, alpha, (one - alpha) / b, -alpha * bm1, (one - alpha) * bm1};
}

bool SystemParams::contains(const FieldElement& x) const {
  return compare(x, left) != Ordering::Less && compare(x, right) != Ordering::Greater;
}

namespace {

void require_domain(const SystemParams& params, const FieldElement& x) {
  if (!x.beta().same_field(params.beta))
    throw Error(ErrorCode::FieldMismatch, "point is not an element of Q(" + params.beta.to_string() + ")");
  if (!params.contains(x)) throw Error(ErrorCode::OutOfDomain, "point lies outside J = [left, right]");
}

int digit_for(int sign_vs_p, Side side) {
  if (side == Side::Plus) return sign_vs_p < 0 ? 0 : 1;
  return sign_vs_p <= 0 ? 0 : 1;
}

}  // namespace

std::pair<int, FieldElement> step(const SystemParams& params, Side side, const FieldElement& x) {
  require_domain(params, x);
  int digit = digit_for((x - params.p).sign(), side);
  auto next = x * FieldElement::generator(params.beta) + params.alpha;
  if (digit) next = next - 1;
  return {digit, std::move(next)};
}

Digits expand(const SystemParams& params, Side side, const FieldElement& x, std::size_t length) {
  require_domain(params, x);
  auto b = FieldElement::generator(params.beta);
  Digits out;
  out.reserve(length);
  FieldElement cur = x;
  for (std::size_t i = 0; i < length; ++i) {
    int digit = digit_for((cur - params.p).sign(), side);
    out.push_back(static_cast<std::uint8_t>(digit));
    cur = cur * b + params.alpha;
    if (digit) cur = cur - 1;
  }
  return out;
}

FieldElement project(const SystemParams& params, const EventuallyPeriodicWord& word) {
  const auto& beta = params.beta;
  auto b = FieldElement::generator(beta);
  auto binv = b.inverse();
  FieldElement value = -params.alpha / (b - 1);
  FieldElement weight = FieldElement::integer(beta, 1);
  for (auto c : word.preperiod()) {
    weight *= binv;
    if (c) value += weight;
  }
  FieldElement block(beta), w = FieldElement::integer(beta, 1);
  for (auto c : word.period()) {
    w *= binv;
    if (c) block += w;
  }
  // Repeating block contributes weight * block / (1 - beta^-m).
  value += weight * block / (1 - w);
  return value;
}

// ---------------------------------------------------------------------------
// Orbit engine. States are kept as R = D * x * beta^d in Z[beta] (power basis),
// D = q * q_hat, so one step is an integer shift, reduction and addition.

namespace {

struct Overflow {};

struct Checked64 {
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t sub(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_sub_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static std::int64_t from(const mpz_class& z) {
    if (!z.fits_slong_p()) throw Overflow{};
    return z.get_si();
  }
  static mpz_class to_mpz(std::int64_t v) { return mpz_class(static_cast<long>(v)); }
  static std::size_t hash(std::int64_t v) { return static_cast<std::size_t>(v); }
};

struct CheckedBig {
  static mpz_class mul(const mpz_class& a, const mpz_class& b) { return a * b; }
  static mpz_class add(const mpz_class& a, const mpz_class& b) { return a + b; }
  static mpz_class sub(const mpz_class& a, const mpz_class& b) { return a - b; }
  static mpz_class from(const mpz_class& z) { return z; }
  static const mpz_class& to_mpz(const mpz_class& v) { return v; }
  static std::size_t hash(const mpz_class& v) {
    return static_cast<std::size_t>(mpz_get_si(v.get_mpz_t())) ^
           (static_cast<std::size_t>(mpz_size(v.get_mpz_t())) << 56);
  }
};

template <class Int>
struct OpsFor;
template <>
struct OpsFor<std::int64_t> {
  using type = Checked64;
};
template <>
struct OpsFor<mpz_class> {
  using type = CheckedBig;
};

std::vector<mpz_class> scaled_vector(const FieldElement& x, const mpz_class& D, const FieldElement& beta_d) {
  FieldElement y = x * beta_d * mpq_class(D);
  if (y.denominator() != 1) throw Error(ErrorCode::Usage, "internal: non-integral orbit representation");
  return y.numerator();
}

}  // namespace

template <class Int>
struct OrbitEngine {
  using Ops = typename OpsFor<Int>::type;

  const SystemParams& params;
  Side side;
  std::size_t d;
  std::vector<Int> a;              // P coefficients a_0..a_{d-1}
  std::vector<Int> add0, add1;     // D(alpha - digit) beta^d
  std::vector<Int> pv;             // D p beta^d
  // beta^i scaled by 2^40, floor and ceiling.
  std::vector<__int128> tlo, thi;
  bool fast_sign = false;

  OrbitEngine(const SystemParams& p, Side s, const mpz_class& D) : params(p), side(s) {
    const auto& beta = p.beta;
    d = static_cast<std::size_t>(beta.degree());
    FieldElement beta_d = FieldElement::generator(beta).pow(static_cast<long>(d));
    for (std::size_t i = 0; i < d; ++i) a.push_back(Ops::from(beta.coefficients()[i]));
    for (const auto& c : scaled_vector(p.alpha, D, beta_d)) add0.push_back(Ops::from(c));
    for (const auto& c : scaled_vector(p.alpha - 1, D, beta_d)) add1.push_back(Ops::from(c));
    for (const auto& c : scaled_vector(p.p, D, beta_d)) pv.push_back(Ops::from(c));
    if (d <= 24) {
      const auto& t = beta.table(0);
      fast_sign = true;
      for (std::size_t i = 0; i < d; ++i) {
        mpz_class lo, hi;
        mpz_fdiv_q_2exp(lo.get_mpz_t(), t.pos_lo[i].get_mpz_t(), t.bits - 40);
        mpz_cdiv_q_2exp(hi.get_mpz_t(), t.pos_hi[i].get_mpz_t(), t.bits - 40);
        if (!hi.fits_slong_p()) {
          fast_sign = false;
          break;
        }
        tlo.push_back(lo.get_si());
        thi.push_back(hi.get_si());
      }
    }
  }

  int exact_sign(const std::vector<mpz_class>& diff) const {
    return FieldElement(params.beta, diff).sign();
  }

  int sign_vs_p(const Int* r) const {
    if constexpr (std::is_same_v<Int, std::int64_t>) {
      constexpr std::int64_t limit = std::int64_t(1) << 50;
      std::int64_t diff[64];
      bool small = fast_sign && d <= 64;
      bool zero = true;
      if (small) {
        for (std::size_t i = 0; i < d; ++i) {
          std::int64_t v;
          if (__builtin_sub_overflow(r[i], pv[i], &v) || v >= limit || v <= -limit) {
            small = false;
            break;
          }
          diff[i] = v;
          if (v) zero = false;
        }
      }
      if (small) {
        if (zero) return 0;
        __int128 lo = 0, hi = 0;
        for (std::size_t i = 0; i < d; ++i) {
          if (diff[i] > 0) {
            lo += diff[i] * tlo[i];
            hi += diff[i] * thi[i];
          } else {
            lo += diff[i] * thi[i];
            hi += diff[i] * tlo[i];
          }
        }
        if (lo > 0) return 1;
        if (hi < 0) return -1;
      }
    }
    std::vector<mpz_class> diff(d);
    for (std::size_t i = 0; i < d; ++i) diff[i] = Ops::to_mpz(r[i]) - Ops::to_mpz(pv[i]);
    return exact_sign(diff);
  }

  std::size_t hash_of(const Int* r) const {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (std::size_t i = 0; i < d; ++i) {
      h ^= Ops::hash(r[i]);
      h *= 0x100000001b3ULL;
      h ^= h >> 29;
    }
    return h;
  }

  void run(OrbitRecord& rec, const std::vector<mpz_class>& start, std::size_t cap) {
    std::vector<Int> flat;
    flat.reserve(d * std::min<std::size_t>(cap + 1, 4096));
    for (const auto& c : start) flat.push_back(Ops::from(c));

    // Open addressing over state indices.
    std::vector<std::uint32_t> slots(1024, UINT32_MAX);
    std::size_t used = 0;
    auto equal = [&](std::size_t i, std::size_t j) {
      for (std::size_t k = 0; k < d; ++k)
        if (flat[i * d + k] != flat[j * d + k]) return false;
      return true;
    };
    auto insert = [&](std::size_t idx, std::size_t h) {
      std::size_t mask = slots.size() - 1;
      for (std::size_t pos = h & mask;; pos = (pos + 1) & mask) {
        if (slots[pos] == UINT32_MAX) {
          slots[pos] = static_cast<std::uint32_t>(idx);
          return;
        }
      }
    };
    auto find_or_insert = [&](std::size_t idx) -> std::size_t {
      std::size_t h = hash_of(&flat[idx * d]);
      std::size_t mask = slots.size() - 1;
      for (std::size_t pos = h & mask;; pos = (pos + 1) & mask) {
        auto s = slots[pos];
        if (s == UINT32_MAX) {
          slots[pos] = static_cast<std::uint32_t>(idx);
          if (++used * 2 > slots.size()) {
            std::vector<std::uint32_t> old(slots.size() * 2, UINT32_MAX);
            slots.swap(old);
            for (auto v : old)
              if (v != UINT32_MAX) insert(v, hash_of(&flat[v * d]));
          }
          return idx;
        }
        if (equal(s, idx)) return s;
      }
    };
    find_or_insert(0);

    Digits digits;
    std::vector<Int> next(d);
    for (std::size_t i = 0;; ++i) {
      const Int* cur = &flat[i * d];
      int digit = digit_for(sign_vs_p(cur), side);
      digits.push_back(static_cast<std::uint8_t>(digit));
      if (i == cap) {
        rec.status_ = {false, 0, 0, cap};
        break;
      }
      const auto& addv = digit ? add1 : add0;
      const Int top = cur[d - 1];
      next[0] = Ops::sub(addv[0], Ops::mul(top, a[0]));
      for (std::size_t j = 1; j < d; ++j)
        next[j] = Ops::add(Ops::sub(cur[j - 1], Ops::mul(top, a[j])), addv[j]);
      for (std::size_t j = 0; j < d; ++j) flat.push_back(next[j]);
      if (i + 1 >= UINT32_MAX) throw Error(ErrorCode::Usage, "orbit cap too large");
      std::size_t found = find_or_insert(i + 1);
      if (found != i + 1) {
        flat.resize(flat.size() - d);
        rec.status_ = {true, found, i + 1 - found, cap};
        break;
      }
    }
    rec.digits_ = std::move(digits);
    rec.dim_ = d;
    if constexpr (std::is_same_v<Int, std::int64_t>) {
      rec.wide_ = false;
      rec.narrow_states_ = std::move(flat);
    } else {
      rec.wide_ = true;
      rec.wide_states_ = std::move(flat);
    }
  }
};

OrbitRecord orbit(const SystemParams& params, Side side, const FieldElement& x, std::size_t cap) {
  if (cap < 1) throw Error(ErrorCode::Usage, "orbit cap must be at least 1");
  require_domain(params, x);
  OrbitRecord rec(params, side, x);
  rec.den_ = x.denominator() * params.alpha.denominator();
  FieldElement beta_d = FieldElement::generator(params.beta).pow(params.beta.degree());
  auto start = scaled_vector(x, rec.den_, beta_d);
  try {
    OrbitEngine<std::int64_t> engine(params, side, rec.den_);
    engine.run(rec, start, cap);
  } catch (const Overflow&) {
    OrbitEngine<mpz_class> engine(params, side, rec.den_);
    engine.run(rec, start, cap);
  }
  return rec;
}

std::size_t OrbitRecord::index_of(std::size_t n) const {
  if (n < length()) return n;
  if (!status_.periodic) throw Error(ErrorCode::IndexOutOfRange, "state index beyond the recorded orbit");
  return status_.preperiod + (n - status_.preperiod) % status_.period;
}

std::vector<mpz_class> OrbitRecord::entry(std::size_t i) const {
  std::vector<mpz_class> out(dim_);
  for (std::size_t k = 0; k < dim_; ++k)
    out[k] = wide_ ? wide_states_[i * dim_ + k] : mpz_class(static_cast<long>(narrow_states_[i * dim_ + k]));
  return out;
}

FieldElement OrbitRecord::state(std::size_t n) const {
  const auto& beta = params_.beta;
  FieldElement R(beta, entry(index_of(n)), den_);
  return R * FieldElement::generator(beta).pow(-static_cast<long>(dim_));
}

RhoVector OrbitRecord::rho(std::size_t n) const {
  auto e = entry(index_of(n));
  RhoVector out;
  out.shared_den = den_;
  out.r.assign(e.rbegin(), e.rend());
  return out;
}

mpz_class OrbitRecord::bound_trace() const {
  mpz_class best = 0;
  if (wide_) {
    for (const auto& v : wide_states_)
      if (abs(v) > best) best = abs(v);
  } else {
    std::uint64_t m = 0;
    for (auto v : narrow_states_) m = std::max<std::uint64_t>(m, v < 0 ? 0 - static_cast<std::uint64_t>(v) : v);
    best = mpz_class(static_cast<unsigned long>(m));
  }
  return best;
}

std::optional<EventuallyPeriodicWord> OrbitRecord::word() const {
  if (!status_.periodic) return std::nullopt;
  auto k = static_cast<long>(status_.preperiod);
  return EventuallyPeriodicWord(Digits(digits_.begin(), digits_.begin() + k), Digits(digits_.begin() + k, digits_.end()));
}

KneadingWord OrbitRecord::kneading_word(std::size_t prefix_length) const {
  KneadingWord w;
  w.exact = word();
  if (w.exact)
    w.prefix = w.exact->prefix(prefix_length);
  else
    w.prefix.assign(digits_.begin(), digits_.begin() + static_cast<long>(std::min(prefix_length, digits_.size())));
  return w;
}

bool verify_rho_identity(const SystemParams& params, Side side, const FieldElement& x, std::size_t n) {
  OrbitRecord rec = orbit(params, side, x, std::max<std::size_t>(n, 1));
  const std::size_t d = static_cast<std::size_t>(params.beta.degree());
  const auto& p = x.numerator();
  const mpz_class& q = x.denominator();
  const auto& ph = params.alpha.numerator();
  const mpz_class& qh = params.alpha.denominator();

  IntPoly lhs(n + 2 * d + 1, mpz_class(0));
  for (std::size_t i = 0; i < d; ++i) lhs[i + n + d] += qh * p[i];
  for (std::size_t i = 1; i <= n; ++i) {
    if (rec.digits()[rec.index_of(i - 1)]) lhs[n + d - i] -= qh * q;
    for (std::size_t j = 0; j < d; ++j) lhs[j + n + d - i] += q * ph[j];
  }
  RhoVector rv = rec.rho(n);
  for (std::size_t i = 1; i <= d; ++i) lhs[d - i] -= rv.r[i - 1];
  return poly::degree(poly::remainder_monic(lhs, params.beta.coefficients())) < 0;
}

PreperResult preper_test(const SystemParams& params, Side side, const FieldElement& x, std::size_t cap) {
  OrbitRecord rec = orbit(params, side, x, cap);
  if (!rec.status().periodic && params.beta.number_class().tag == NumberTag::Pisot)
    throw Error(ErrorCode::PisotGuaranteeViolated,
                "beta is Pisot but the orbit did not close within " + std::to_string(cap) + " steps");
  return {rec.status(), rec.bound_trace()};
}

}  // namespace betakit
