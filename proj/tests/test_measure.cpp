#include <random>

#include "betakit/measure.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace betakit;

namespace {

bool inside(const IntervalSet& set, const FieldElement& x) {
  for (const auto& [l, r] : set)
    if (compare(l, x) != Ordering::Greater && compare(x, r) != Ordering::Greater) return true;
  return false;
}

}  // namespace

TEST_CASE("golden mean density at alpha = 0") {
  auto g = make_beta({-1, -1, 1});
  auto b = FieldElement::generator(g);
  auto d = parry_density(SystemParams::make(g, FieldElement(g)), 10);
  CHECK(d.exact());
  REQUIRE(d.breakpoints.size() == 3);
  CHECK(d.breakpoints[0].is_zero());
  CHECK(d.breakpoints[1] == b.inverse());
  CHECK(d.breakpoints[2] == FieldElement::integer(g, 1));
  CHECK(d.values[0] == 1 + b.inverse());
  CHECK(d.values[1] == FieldElement::integer(g, 1));

  auto rep = check_invariance(SystemParams::make(g, FieldElement(g)), 10, 8);
  CHECK(rep.exact_zero);
  CHECK(rep.within_bound());
}

TEST_CASE("density truncation and invariance") {
  // sqrt 2 is not Pisot: orbits generally do not close.
  auto s2 = make_beta({-2, 0, 1});
  auto sp = SystemParams::make(s2, FieldElement::rational(s2, mpq_class(1, 7)));
  auto d = parry_density(sp, 40);
  CHECK_FALSE(d.exact());
  CHECK(d.tail_bound > 0);
  CHECK(d.tail_bound < mpq_class(1, 100000));
  for (const auto& e : d.enclosures(mpq_class(1, 1000000))) CHECK(e.hi >= 0);
  auto rep = check_invariance(sp, 40, 16);
  CHECK(rep.within_bound());

  std::mt19937_64 rng(41);
  for (int m = 2; m <= 4; ++m) {
    auto beta = make_beta(betakit::testing::multinacci(m));
    auto bm = FieldElement::generator(beta);
    for (int t = 0; t < 5; ++t) {
      auto alpha = (2 - bm) * mpq_class(static_cast<long>(rng() % 51), 50);
      auto params = SystemParams::make(beta, alpha);
      auto dens = parry_density(params, 1000000);
      CHECK(dens.exact());
      for (const auto& v : dens.values) CHECK(v.sign() >= 0);
      auto r = check_invariance(params, 1000000, 12);
      CHECK(r.exact_zero);
    }
  }
}

TEST_CASE("support components") {
  auto g = make_beta({-1, -1, 1});
  auto gb = FieldElement::generator(g);
  auto full = support_components(SystemParams::make(g, 1 - gb * mpq_class(1, 2)));
  CHECK(full.transitive);
  REQUIRE(full.components.size() == 1);
  CHECK(full.components[0].first.is_zero());

  auto r = make_beta({-1, 0, -1, 0, 1});
  auto region = interval_Ink(2, 1, r);
  auto sp = SystemParams::make(r, (region.lo + region.hi) * mpq_class(1, 2));
  auto two = support_components(sp);
  CHECK_FALSE(two.transitive);
  // Two arcs modulo 1: the component through p wraps around to [0, .] and [., 1].
  REQUIRE(two.components.size() == 3);
  CHECK(two.components.front().first.is_zero());
  CHECK(two.components.back().second == FieldElement::integer(r, 1));
  CHECK(two.components[1].first == sp.alpha);
  CHECK(pairwise_disjoint({{two.components[0]}, {two.components[1]}, {two.components[2]}}));

  auto s2 = make_beta({-2, 0, 1});
  auto single = interval_Ink(2, 1, s2);
  auto at = support_components(SystemParams::make(s2, single.lo));
  CHECK_FALSE(at.transitive);
  REQUIRE(at.components.size() == 1);
  CHECK(at.components[0].second == FieldElement::integer(s2, 1));
}

TEST_CASE("support dichotomy on random parameters") {
  std::mt19937_64 rng(43);
  std::vector<AlgebraicNumber> betas{make_beta({-1, 0, -1, 0, 1}), make_beta({-1, -1, 0, 1}),
                                     make_beta({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1})};
  int nontransitive = 0;
  for (int i = 0; i < 50; ++i) {
    const auto& beta = betas[static_cast<std::size_t>(i) % betas.size()];
    auto b = FieldElement::generator(beta);
    auto sp = SystemParams::make(beta, (2 - b) * mpq_class(static_cast<long>(rng() % 1001), 1000));
    auto sup = support_components(sp);
    auto tr = transitivity(sp);
    CHECK(sup.transitive == tr.transitive);
    if (sup.transitive) {
      CHECK(sup.components.size() == 1);
      continue;
    }
    ++nontransitive;
    CHECK(image_closure(sp, Side::Plus, sup.components).size() <= sup.components.size());
    for (const auto& [l, rr] : image_closure(sp, Side::Plus, sup.components)) {
      CHECK(inside(sup.components, l));
      CHECK(inside(sup.components, rr));
    }
    // The density vanishes on the gaps between components.
    auto d = parry_density(sp, 2000);
    for (std::size_t c = 0; c < d.values.size(); ++c) {
      auto mid = (d.breakpoints[c] + d.breakpoints[c + 1]) * mpq_class(1, 2);
      if (inside(sup.components, mid)) continue;
      auto e = approximate(d.values[c], mpq_class(1, 1 << 20));
      CHECK(e.lo <= d.tail_bound);
      CHECK(e.hi >= -d.tail_bound);
    }
  }
  CHECK(nontransitive > 0);
}
