#include "betakit/regions.hpp"

#include <algorithm>
#include <numeric>

namespace betakit {

namespace {

struct Combinatorics {
  int s = 0;
  std::vector<long> V, r, h;
};

Combinatorics combinatorics(int n, int k) {
  if (k < 1 || n < 2 || k >= n) throw Error(ErrorCode::Usage, "need 1 <= k < n and n >= 2");
  if (std::gcd(n, k) != 1) throw Error(ErrorCode::NotCoprime, "gcd(n, k) must be 1");
  Combinatorics c;
  c.s = n % k;
  for (long j = 1; j <= c.s; ++j) {
    long Vj = j * k / c.s;
    c.V.push_back(Vj);
    c.r.push_back(j * k - Vj * c.s);
    c.h.push_back(c.V.size() == 1 ? Vj : Vj - c.V[c.V.size() - 2]);
  }
  return c;
}

// W_j with the exponent symbol taken as n. `pow(e)` returns beta^e.
template <class T, class Pow>
std::vector<T> w_terms(const Combinatorics& c, int n, const T& zero, Pow pow) {
  std::vector<T> W;
  if (c.s == 0) return W;
  const long m = n, s = c.s, Vs = c.V.back();
  for (long j = 1; j <= s; ++j) {
    T sum = zero;
    long count = c.h[static_cast<std::size_t>(j - 1)];
    long Vprev = j == 1 ? 0 : c.V[static_cast<std::size_t>(j - 2)];
    for (long i = 1; i <= count; ++i) sum = sum + pow((Vs - Vprev - i) * m + s - j);
    W.push_back(sum);
  }
  return W;
}

template <class T, class Pow>
std::pair<T, T> endpoints(int n, int k, const T& b, const T& sumW, Pow pow) {
  T geo = pow(0);
  for (int i = 1; i < n; ++i) geo = geo + pow(i);
  T S = b * geo;
  T bn = pow(n), bn1 = pow(n + 1);
  T one = pow(0);
  if (k == 1) return {one / S, (bn - bn1 + b + b - one) / S};
  return {(one + b * (sumW - one)) / S, (b * sumW - bn1 + bn + b - one) / S};
}

FieldElement sum_of(const std::vector<FieldElement>& W, const AlgebraicNumber& beta) {
  FieldElement acc(beta);
  for (const auto& w : W) acc += w;
  return acc;
}

}  // namespace

bool RegionDescriptor::contains(const FieldElement& alpha) const {
  return compare(lo, alpha) != Ordering::Greater && compare(alpha, hi) != Ordering::Greater;
}

RegionDescriptor interval_Ink(int n, int k, const AlgebraicNumber& beta) {
  auto c = combinatorics(n, k);
  auto b = FieldElement::generator(beta);
  if (compare(b.pow(n), FieldElement::integer(beta, 2)) == Ordering::Greater)
    throw Error(ErrorCode::BetaOutOfRange, "beta exceeds 2^(1/" + std::to_string(n) + ")");
  auto pow = [&](long e) { return b.pow(e); };
  auto W = w_terms(c, n, FieldElement(beta), pow);
  auto [lo, hi] = endpoints(n, k, b, sum_of(W, beta), pow);
  RegionDescriptor d{n, k, c.s, c.V, c.r, c.h, std::move(W), std::move(lo), std::move(hi), k >= 2};
  return d;
}

std::pair<mpq_class, mpq_class> interval_Ink_at(int n, int k, const mpq_class& beta) {
  auto c = combinatorics(n, k);
  auto pow = [&](long e) {
    mpq_class out = 1;
    for (long i = 0; i < e; ++i) out *= beta;
    return out;
  };
  auto W = w_terms(c, n, mpq_class(0), pow);
  mpq_class sumW = std::accumulate(W.begin(), W.end(), mpq_class(0));
  return endpoints(n, k, beta, sumW, pow);
}

TransitivityResult transitivity(const SystemParams& params, int n_max, bool strict) {
  if (n_max < 2) throw Error(ErrorCode::Usage, "n_max must be at least 2");
  auto b = FieldElement::generator(params.beta);
  auto two = FieldElement::integer(params.beta, 2);
  std::optional<RegionDescriptor> experimental_hit;
  FieldElement bn = b;
  for (int n = 2; n <= n_max; ++n) {
    bn *= b;
    if (compare(bn, two) == Ordering::Greater) break;
    for (int k = 1; k < n; ++k) {
      if (std::gcd(n, k) != 1) continue;
      if (k >= 2 && experimental_hit) continue;
      auto d = interval_Ink(n, k, params.beta);
      if (!d.contains(params.alpha)) continue;
      if (k == 1) return {false, std::move(d), false};
      experimental_hit = std::move(d);
    }
  }
  if (!experimental_hit) return {};
  if (strict)
    throw Error(ErrorCode::ExperimentalRegionHit,
                "alpha lies only in the experimental region I_{" + std::to_string(experimental_hit->n) + "," +
                    std::to_string(experimental_hit->k) + "}");
  return {false, std::move(experimental_hit), true};
}

AlgebraicNumber root_field(const AlgebraicNumber& beta, int n) {
  if (n < 1) throw Error(ErrorCode::Usage, "root index must be positive");
  return make_beta(poly::substitute_power(beta.coefficients(), n), beta.options());
}

std::optional<FieldElement> pull_back_power(const FieldElement& x, const AlgebraicNumber& beta, int n) {
  const auto& num = x.numerator();
  std::vector<mpz_class> out;
  for (std::size_t i = 0; i < num.size(); ++i) {
    if (i % static_cast<std::size_t>(n) == 0)
      out.push_back(num[i]);
    else if (num[i] != 0)
      return std::nullopt;
  }
  if (poly::substitute_power(beta.coefficients(), n) != x.beta().coefficients())
    throw Error(ErrorCode::FieldMismatch, "element does not live in Q(beta^(1/n))");
  return FieldElement(beta, std::move(out), x.denominator());
}

namespace {

FieldElement sum_w_in(const AlgebraicNumber& field, int n, int k) {
  auto c = combinatorics(n, k);
  auto g = FieldElement::generator(field);
  return sum_of(w_terms(c, n, FieldElement(field), [&](long e) { return g.pow(e); }), field);
}

FieldElement alpha_nk_unchecked(const FieldElement& alpha, int n, int k, const AlgebraicNumber& field) {
  auto g = FieldElement::generator(field);
  auto a = embed_power(alpha, field, n);
  auto shift = k == 1 ? FieldElement::integer(field, 1) : sum_w_in(field, n, k);
  return ((1 - a) * (1 - g.inverse()) - shift) * (1 - g) / (g.pow(n) - 1);
}

}  // namespace

FieldElement alpha_nk(const AlgebraicNumber& beta, const FieldElement& alpha, int n, int k) {
  combinatorics(n, k);
  if (!alpha.beta().same_field(beta)) throw Error(ErrorCode::FieldMismatch, "alpha is not in Q(beta)");
  SystemParams::make(beta, alpha);
  auto field = root_field(beta, n);
  auto out = alpha_nk_unchecked(alpha, n, k, field);
  if (!interval_Ink(n, k, field).contains(out))
    throw Error(ErrorCode::OutOfRegion, "alpha_{n,k} falls outside I_{n,k}(beta^(1/n))");
  return out;
}

FieldElement renorm_down(const SystemParams& params, int n, int k, bool allow_experimental) {
  auto d = interval_Ink(n, k, params.beta);
  if (k >= 2 && !allow_experimental)
    throw Error(ErrorCode::ExperimentalRegionHit, "renormalization for k >= 2 is experimental");
  if (!d.contains(params.alpha)) throw Error(ErrorCode::OutOfRegion, "alpha is not in I_{n,k}(beta)");
  auto g = FieldElement::generator(params.beta);
  auto shift = k == 1 ? g - 1 : (g - 1) * sum_of(d.W, params.beta);
  return 1 - (shift - params.alpha * (g.pow(n) - 1)) / ((g - 1) * (1 - g.inverse()));
}

IntervalSet image_closure(const SystemParams& params, Side side, const IntervalSet& set) {
  auto b = FieldElement::generator(params.beta);
  const auto& p = params.p;
  auto left = [&](const FieldElement& x) { return b * x + params.alpha; };
  auto right = [&](const FieldElement& x) { return b * x + params.alpha - 1; };
  IntervalSet out;
  for (const auto& [l, r] : set) {
    if (l == r) {
      auto y = step(params, side, l).second;
      out.emplace_back(y, y);
      continue;
    }
    auto lp = compare(l, p), rp = compare(r, p);
    if (lp == Ordering::Less || (lp == Ordering::Equal && side == Side::Minus))
      out.emplace_back(left(l), left(rp == Ordering::Greater ? p : r));
    if (rp == Ordering::Greater || (rp == Ordering::Equal && side == Side::Plus))
      out.emplace_back(right(lp == Ordering::Less ? p : l), right(r));
  }
  std::sort(out.begin(), out.end(),
            [](const auto& a, const auto& c) { return compare(a.first, c.first) == Ordering::Less; });
  IntervalSet merged;
  for (auto& iv : out) {
    if (!merged.empty() && compare(iv.first, merged.back().second) != Ordering::Greater) {
      if (compare(iv.second, merged.back().second) == Ordering::Greater) merged.back().second = iv.second;
    } else {
      merged.push_back(std::move(iv));
    }
  }
  return merged;
}

bool pairwise_disjoint(const std::vector<IntervalSet>& sets) {
  for (std::size_t i = 0; i < sets.size(); ++i)
    for (std::size_t j = i + 1; j < sets.size(); ++j)
      for (const auto& [a, b] : sets[i])
        for (const auto& [c, d] : sets[j])
          if (compare(a, d) != Ordering::Greater && compare(c, b) != Ordering::Greater) return false;
  return true;
}

ConjugacyReport verify_conjugacy(const AlgebraicNumber& beta, const FieldElement& alpha, int n, int k,
                                 std::size_t sample_count) {
  combinatorics(n, k);
  auto big = SystemParams::make(beta, alpha);
  auto field = root_field(beta, n);
  auto a = alpha_nk_unchecked(alpha, n, k, field);
  auto g = FieldElement::generator(field);
  ConjugacyReport report;
  if (a.sign() < 0 || compare(a, 2 - g) == Ordering::Greater) {
    report.samples = sample_count;
    report.identity_failures = std::max<std::size_t>(sample_count, 1);
    return report;
  }
  auto small = SystemParams::make(field, a);
  auto phi = [&](const FieldElement& x) { return (g - 1) * embed_power(x, field, n) + a; };

  auto b = FieldElement::generator(beta);
  std::vector<FieldElement> xs;
  for (std::size_t i = 0; i < sample_count; ++i) {
    mpq_class t(static_cast<long>(i), static_cast<long>(std::max<std::size_t>(sample_count, 2) - 1));
    t.canonicalize();
    if (i == 1)
      xs.push_back(big.p);
    else if (i % 2 == 0)
      xs.push_back(FieldElement::rational(beta, t));
    else
      xs.push_back((b - 1) * t);
  }
  for (const auto& x : xs) {
    ++report.samples;
    for (Side side : {Side::Plus, Side::Minus}) {
      auto lhs = phi(step(big, side, x).second);
      auto rhs = phi(x);
      for (int i = 0; i < n; ++i) rhs = step(small, side, rhs).second;
      if (!(lhs == rhs)) {
        ++report.identity_failures;
        break;
      }
    }
  }

  if (alpha.sign() > 0 && compare(alpha, 2 - b) == Ordering::Less) {
    bool disjoint = true;
    for (Side side : {Side::Plus, Side::Minus}) {
      IntervalSet cur{{a, g + a - 1}};
      std::vector<IntervalSet> images;
      for (int i = 1; i <= n; ++i) {
        cur = image_closure(small, side, cur);
        images.push_back(cur);
      }
      disjoint = disjoint && pairwise_disjoint(images);
    }
    report.images_disjoint = disjoint;
  }
  return report;
}

}  // namespace betakit
