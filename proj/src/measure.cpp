#include "betakit/measure.hpp"

#include <algorithm>

namespace betakit {

namespace {

struct WeightedPoint {
  FieldElement x;
  FieldElement w;
};

// Appends T^i(x) with weight sign * beta^-i, folding a closed cycle into a
// geometric factor. Returns whether the orbit closed.
bool add_orbit(const SystemParams& params, const FieldElement& x, std::size_t order, int sign,
               std::vector<WeightedPoint>& out) {
  auto rec = orbit(params, Side::Plus, x, order);
  auto inv = FieldElement::generator(params.beta).inverse();
  const auto& st = rec.status();
  FieldElement cycle_factor = FieldElement::integer(params.beta, 1);
  if (st.periodic) cycle_factor = (1 - inv.pow(static_cast<long>(st.period))).inverse();
  FieldElement w = FieldElement::integer(params.beta, sign);
  for (std::size_t i = 0; i < rec.length(); ++i) {
    bool in_cycle = st.periodic && i >= st.preperiod;
    out.push_back({rec.state(i), in_cycle ? w * cycle_factor : w});
    w *= inv;
  }
  return st.periodic;
}

mpq_class geometric_tail(const AlgebraicNumber& beta, std::size_t order) {
  auto enc = approximate(FieldElement::generator(beta), mpq_class(1, 1u << 30));
  mpq_class lo = enc.lo;
  mpq_class p = 1;
  for (std::size_t i = 0; i < order; ++i) p *= lo;
  return 1 / (p * (lo - 1));
}

bool less(const FieldElement& a, const FieldElement& b) { return compare(a, b) == Ordering::Less; }

}  // namespace

std::vector<RationalInterval> DensityApprox::enclosures(const mpq_class& width) const {
  std::vector<RationalInterval> out;
  out.reserve(values.size());
  for (const auto& v : values) {
    auto e = approximate(v, width);
    out.push_back({e.lo - tail_bound, e.hi + tail_bound});
  }
  return out;
}

const FieldElement& DensityApprox::value_at(const FieldElement& x) const {
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), x, less);
  std::size_t cell = it == breakpoints.begin() ? 0 : static_cast<std::size_t>(it - breakpoints.begin()) - 1;
  return values[std::min(cell, values.size() - 1)];
}

FieldElement DensityApprox::integral(const FieldElement& a, const FieldElement& b) const {
  FieldElement acc(a.beta());
  if (compare(a, b) != Ordering::Less) return acc;
  auto it = std::upper_bound(breakpoints.begin(), breakpoints.end(), a, less);
  std::size_t i = it == breakpoints.begin() ? 0 : static_cast<std::size_t>(it - breakpoints.begin()) - 1;
  for (; i < values.size() && less(breakpoints[i], b); ++i) {
    auto lo = max(breakpoints[i], a), hi = min(breakpoints[i + 1], b);
    if (less(lo, hi)) acc += (hi - lo) * values[i];
  }
  return acc;
}

DensityApprox parry_density(const SystemParams& params, std::size_t order) {
  if (order < 1) throw Error(ErrorCode::Usage, "order must be at least 1");
  const auto& beta = params.beta;
  std::vector<WeightedPoint> pts;
  bool closed_one = add_orbit(params, FieldElement::integer(beta, 1), order, 1, pts);
  bool closed_zero = add_orbit(params, FieldElement(beta), order, -1, pts);

  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) { return less(a.x, b.x); });
  std::vector<WeightedPoint> merged;
  for (auto& pt : pts) {
    if (!merged.empty() && merged.back().x == pt.x)
      merged.back().w += pt.w;
    else
      merged.push_back(std::move(pt));
  }

  DensityApprox d;
  d.order = order;
  d.tail_bound = closed_one && closed_zero ? mpq_class(0) : geometric_tail(beta, order);
  FieldElement suffix(beta);
  d.values.assign(merged.size() - 1, FieldElement(beta));
  for (std::size_t i = merged.size() - 1; i > 0; --i) {
    suffix += merged[i].w;
    d.values[i - 1] = suffix;
  }
  for (auto& m : merged) d.breakpoints.push_back(std::move(m.x));
  return d;
}

InvarianceReport check_invariance(const SystemParams& params, std::size_t order, std::size_t cells) {
  if (cells < 2) throw Error(ErrorCode::Usage, "cells must be at least 2");
  auto d = parry_density(params, order);
  const auto& beta = params.beta;
  auto b = FieldElement::generator(beta);
  auto zero = FieldElement(beta), one = FieldElement::integer(beta, 1);
  InvarianceReport rep;
  rep.bound = 2 * d.tail_bound;
  rep.exact_zero = true;
  mpq_class width(1, 1u << 20);
  if (rep.bound > 0 && rep.bound < 8 * width) width = rep.bound / 8;
  for (std::size_t i = 0; i < cells; ++i) {
    auto u = FieldElement::rational(beta, mpq_class(static_cast<long>(i), static_cast<long>(cells)));
    auto v = FieldElement::rational(beta, mpq_class(static_cast<long>(i + 1), static_cast<long>(cells)));
    auto pre = d.integral(max(zero, (u - params.alpha) / b), min(params.p, (v - params.alpha) / b)) +
               d.integral(max(params.p, (u + 1 - params.alpha) / b), min(one, (v + 1 - params.alpha) / b));
    auto diff = abs(pre - d.integral(u, v));
    if (diff.is_zero()) continue;
    rep.exact_zero = false;
    auto e = approximate(diff, width);
    if (e.hi > rep.max_discrepancy) rep.max_discrepancy = e.hi;
  }
  return rep;
}

SupportResult support_components(const SystemParams& params, int n_max, bool strict) {
  const auto& beta = params.beta;
  auto zero = FieldElement(beta), one = FieldElement::integer(beta, 1);
  auto tr = transitivity(params, n_max, strict);
  SupportResult out;
  out.transitive = tr.transitive;
  out.experimental = tr.experimental;
  out.region = tr.region;
  if (tr.transitive || tr.region->singleton()) {
    out.components = {{zero, one}};
    return out;
  }
  auto b = FieldElement::generator(beta);
  IntervalSet cur{{params.alpha, b + params.alpha - 1}};
  IntervalSet all;
  for (int i = 1; i <= tr.region->n; ++i) {
    cur = image_closure(params, Side::Plus, cur);
    all.insert(all.end(), cur.begin(), cur.end());
  }
  std::sort(all.begin(), all.end(), [](const auto& x, const auto& y) { return less(x.first, y.first); });
  for (auto& iv : all) {
    if (!out.components.empty() && !less(out.components.back().second, iv.first)) {
      if (less(out.components.back().second, iv.second)) out.components.back().second = iv.second;
    } else {
      out.components.push_back(std::move(iv));
    }
  }
  return out;
}

}  // namespace betakit
