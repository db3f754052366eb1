#include "betakit/lorenz.hpp"

#include <algorithm>
#include <optional>
#include <unordered_map>

namespace betakit {

LorenzParams LorenzParams::make(const AlgebraicNumber& beta, const FieldElement& q) {
  auto b = FieldElement::generator(beta);
  auto inv = b.inverse();
  if (compare(q, 1 - inv) == Ordering::Less || compare(q, inv) == Ordering::Greater)
    throw Error(ErrorCode::OutOfDomain, "q must lie in [1 - 1/beta, 1/beta]");
  return {beta, q};
}

LorenzParams to_lorenz(const SystemParams& params) {
  auto b = FieldElement::generator(params.beta);
  return {params.beta, 1 + (params.alpha - 1) / b};
}

FieldElement alpha_from_q(const LorenzParams& lp) {
  return FieldElement::generator(lp.beta) * (lp.q - 1) + 1;
}

FieldElement conjugacy_map(const SystemParams& params, const FieldElement& x) {
  return (FieldElement::generator(params.beta) - 1) * x + params.alpha;
}

std::pair<int, FieldElement> lorenz_step(const LorenzParams& lp, Side side, const FieldElement& x) {
  int s = compare(x, lp.q) == Ordering::Less ? -1 : (x == lp.q ? 0 : 1);
  int digit = side == Side::Plus ? (s < 0 ? 0 : 1) : (s <= 0 ? 0 : 1);
  auto b = FieldElement::generator(lp.beta);
  auto next = b * x;
  if (digit) next = next + 1 - b;
  return {digit, std::move(next)};
}

KneadingWord lorenz_kneading(const LorenzParams& lp, Side side, std::size_t cap) {
  std::unordered_map<FieldElement, std::size_t, FieldElementHash> seen;
  Digits digits;
  FieldElement x = lp.q;
  KneadingWord out;
  for (std::size_t i = 0; i <= cap; ++i) {
    auto [it, fresh] = seen.emplace(x, i);
    if (!fresh) {
      auto k = static_cast<long>(it->second);
      out.exact = EventuallyPeriodicWord(Digits(digits.begin(), digits.begin() + k), Digits(digits.begin() + k, digits.end()));
      out.prefix = digits;
      return out;
    }
    auto [d, next] = lorenz_step(lp, side, x);
    digits.push_back(static_cast<std::uint8_t>(d));
    x = std::move(next);
  }
  out.prefix = digits;
  return out;
}

namespace {

// True when iterating U from x for w.size() steps reads w and returns to x.
bool closes_with(const LorenzParams& lp, Side side, const FieldElement& x, const Digits& w) {
  FieldElement cur = x;
  for (auto c : w) {
    auto [d, next] = lorenz_step(lp, side, cur);
    if (d != c) return false;
    cur = std::move(next);
  }
  return cur == x;
}

}  // namespace

LorenzParams search_periodic_parameter(const LorenzParams& lp, Side side, const mpq_class& epsilon,
                                       const SearchOptions& options) {
  if (epsilon <= 0) throw Error(ErrorCode::Usage, "epsilon must be positive");
  if (options.period_cap < 1) throw Error(ErrorCode::Usage, "period cap must be positive");
  const auto& beta = lp.beta;
  auto b = FieldElement::generator(beta);
  auto lo = (b - 1) / b, hi = b.inverse();
  if (compare(lp.q, lo) != Ordering::Greater || compare(lp.q, hi) != Ordering::Less)
    throw Error(ErrorCode::OutOfDomain, "q must lie in the open interval ((beta-1)/beta, 1/beta)");

  const std::size_t length = std::max(options.prefix_length, options.period_cap);
  KneadingWord current = lorenz_kneading(lp, side, length);
  if (current.exact && current.exact->purely_periodic()) return lp;

  Digits v = current.exact ? current.exact->prefix(length) : current.prefix;
  v.resize(std::min(v.size(), length));
  auto eps = FieldElement::rational(beta, epsilon);
  auto one_minus_b = 1 - b;
  FieldElement c(beta);        // sum w_i (1-beta) beta^(L-i)
  FieldElement power = FieldElement::integer(beta, 1);  // beta^L
  for (std::size_t L = 1; L <= std::min(options.period_cap, v.size()); ++L) {
    c = c * b;
    if (v[L - 1]) c += one_minus_b;
    power *= b;
    FieldElement x = c / (1 - power);
    auto ord = compare(x, lp.q);
    if (side == Side::Minus ? ord != Ordering::Less : ord != Ordering::Greater) continue;
    if (compare(abs(x - lp.q), eps) != Ordering::Less) continue;
    if (compare(x, lo) != Ordering::Greater || compare(x, hi) != Ordering::Less) continue;
    LorenzParams cand{beta, x};
    if (closes_with(cand, side, x, Digits(v.begin(), v.begin() + static_cast<long>(L)))) return cand;
  }
  throw Error(ErrorCode::NotFound,
              "no periodic parameter closes within period cap " + std::to_string(options.period_cap));
}

int multinacci_index(const AlgebraicNumber& beta) {
  const auto& P = beta.coefficients();
  const int m = beta.degree();
  if (m < 2) return 0;
  for (int i = 0; i < m; ++i)
    if (P[static_cast<std::size_t>(i)] != -1) return 0;
  return m;
}

SftSearchResult search_sft_alpha(const AlgebraicNumber& beta, const FieldElement& alpha, const mpq_class& epsilon,
                                 const SearchOptions& options, std::size_t orbit_cap) {
  const int m = multinacci_index(beta);
  if (m == 0) throw Error(ErrorCode::Usage, "search-sft requires a multinacci beta");
  auto b = FieldElement::generator(beta);
  if (alpha.sign() <= 0 || compare(alpha, 2 - b) != Ordering::Less)
    throw Error(ErrorCode::OutOfDomain, "alpha must lie in the open interval (0, 2 - beta)");

  auto sft_check = [&](const FieldElement& a) -> std::optional<SftSearchResult> {
    auto sp = SystemParams::make(beta, a);
    auto pair = kneading_pair(sp, orbit_cap);
    auto tag = classify_shift(pair);
    if (tag != ShiftTag::SFT) return std::nullopt;
    return SftSearchResult{a, std::move(pair), tag};
  };
  if (auto hit = sft_check(alpha)) return *hit;

  auto sp = SystemParams::make(beta, alpha);
  auto lp = to_lorenz(sp);
  // alpha' - alpha = beta (q' - q), so q needs a tighter tolerance.
  mpq_class q_eps = epsilon / 2;
  for (Side side : {Side::Minus, Side::Plus}) {
    LorenzParams found = [&] {
      try {
        return search_periodic_parameter(lp, side, q_eps, options);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::NotFound) throw;
        return lp;
      }
    }();
    if (found.q == lp.q) continue;
    auto a = alpha_from_q(found);
    if (a.sign() <= 0 || compare(a, 2 - b) != Ordering::Less) continue;
    if (compare(abs(a - alpha), FieldElement::rational(beta, epsilon)) != Ordering::Less) continue;
    if (auto hit = sft_check(a)) return *hit;
  }
  throw Error(ErrorCode::NotFound, "no SFT parameter found within the search caps");
}

}  // namespace betakit
