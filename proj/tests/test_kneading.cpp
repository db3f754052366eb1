#include <functional>
#include <random>
#include <set>

#include "betakit/kneading.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace betakit;

namespace {

KneadingPair exact_pair(const std::string& upper, const std::string& lower) {
  KneadingPair p;
  p.upper.exact = EventuallyPeriodicWord::parse(upper);
  p.lower.exact = EventuallyPeriodicWord::parse(lower);
  return p;
}

// |rho - target| <= tol, decided on rational enclosures.
bool radius_near(const EntropyBounds& e, const FieldElement& target, const mpq_class& tol) {
  auto t = approximate(target, tol / 4);
  return e.radius.lo >= t.lo - tol && e.radius.hi <= t.hi + tol;
}

}  // namespace

TEST_CASE("word canonical form") {
  EventuallyPeriodicWord w({0, 1, 1, 0}, {1, 0, 1, 0});
  CHECK(w.to_string() == "01(10)");
  CHECK(EventuallyPeriodicWord({1, 1, 0}, {0, 0}).to_string() == "11(0)");
  CHECK(EventuallyPeriodicWord({}, {1, 0, 0, 1, 1, 0, 0, 1}).to_string() == "(1001)");
  CHECK(EventuallyPeriodicWord({0}, {1}).to_string() == "0(1)");
  CHECK(EventuallyPeriodicWord::parse("01(10)").shifted().to_string() == "1(10)");
  CHECK(EventuallyPeriodicWord::parse("01(10)").shifted(2).to_string() == "(10)");
  CHECK(lex_compare(EventuallyPeriodicWord::parse("(10)"), EventuallyPeriodicWord::parse("1(01)")) == 0);
  CHECK(lex_compare(EventuallyPeriodicWord::parse("(100)"), EventuallyPeriodicWord::parse("(1001)")) < 0);
  CHECK_THROWS_AS(EventuallyPeriodicWord::parse("0110"), Error);
}

TEST_CASE("kneading pairs") {
  auto g = make_beta({-1, -1, 1});
  auto b = FieldElement::generator(g);
  auto sym = SystemParams::make(g, 1 - b * mpq_class(1, 2));
  auto pair = kneading_pair(sym, 1000);
  CHECK(pair.upper.to_string() == "(100)");
  CHECK(pair.lower.to_string() == "(011)");
  CHECK(classify_shift(pair) == ShiftTag::SFT);

  auto r = make_beta({-1, 0, -1, 0, 1});
  auto rb = FieldElement::generator(r);
  auto ex = SystemParams::make(r, 2 - rb * rb);
  auto pair2 = kneading_pair(ex, 1000);
  CHECK(pair2.upper.to_string() == "(1001)");
  CHECK(pair2.lower.to_string() == "01(10)");
  CHECK(classify_shift(pair2) == ShiftTag::SoficNotSFT);

  KneadingPair cut;
  cut.upper.prefix = {1, 0, 1};
  cut.lower.exact = EventuallyPeriodicWord::parse("(01)");
  CHECK(classify_shift(cut) == ShiftTag::Unknown);
  CHECK_THROWS_AS(subshift_graph(cut), Error);
}

TEST_CASE("multinacci prefixes") {
  std::mt19937_64 rng(5);
  for (int m = 2; m <= 6; ++m) {
    auto beta = make_beta(betakit::testing::multinacci(m));
    auto b = FieldElement::generator(beta);
    for (int t = 0; t < 5; ++t) {
      auto alpha = (2 - b) * mpq_class(static_cast<long>(rng() % 99 + 1), 100);
      auto sp = SystemParams::make(beta, alpha);
      auto up = expand(sp, Side::Plus, sp.p, static_cast<std::size_t>(m + 1));
      auto lo = expand(sp, Side::Minus, sp.p, static_cast<std::size_t>(m + 1));
      Digits want_up(static_cast<std::size_t>(m + 1), 0), want_lo(static_cast<std::size_t>(m + 1), 1);
      want_up[0] = 1;
      want_lo[0] = 0;
      CHECK(up == want_up);
      CHECK(lo == want_lo);
    }
  }
}

TEST_CASE("admissibility") {
  auto g = make_beta({-1, -1, 1});
  auto b = FieldElement::generator(g);
  auto sym = SystemParams::make(g, 1 - b * mpq_class(1, 2));
  auto pair = kneading_pair(sym, 1000);
  CHECK(admissible(pair.upper.exact->prefix(30), pair, Side::Plus));
  CHECK(admissible(*pair.upper.exact, pair, Side::Plus));
  CHECK(admissible(Digits{0, 0, 0, 0}, pair, Side::Plus));
  // A block 0 1^L overtakes the lower invariant unless alpha = 2 - beta.
  CHECK_FALSE(admissible(Digits{0, 1, 1, 1, 1, 1}, pair, Side::Plus));
  auto lazy = SystemParams::make(g, 2 - b);
  auto lazy_pair = kneading_pair(lazy, 1000);
  CHECK(lazy_pair.lower.to_string() == "0(1)");
  CHECK(admissible(Digits{0, 1, 1, 1, 1, 1}, lazy_pair, Side::Plus));

  // Every expansion generated by the map is admissible.
  std::mt19937_64 rng(9);
  for (int i = 0; i < 50; ++i) {
    auto x = sym.left + (sym.right - sym.left) * mpq_class(static_cast<long>(rng() % 1000), 999);
    CHECK(admissible(expand(sym, Side::Plus, x, 30), pair, Side::Plus));
    CHECK(admissible(expand(sym, Side::Minus, x, 30), pair, Side::Minus));
  }
}

TEST_CASE("subshift graphs and entropy") {
  auto full = subshift_graph(exact_pair("1(0)", "0(1)"));
  CHECK(full.states == 1);
  CHECK(full.edges.size() == 2);
  auto e = entropy(full);
  CHECK(e.radius.lo == 2);
  CHECK(e.radius.hi == 2);
  // log 2 = 0.69314718055994530941...
  CHECK(e.log_radius.lo <= mpq_class("69314718055994531/100000000000000000"));
  CHECK(e.log_radius.hi >= mpq_class("69314718055994530/100000000000000000"));
  CHECK(e.log_radius.width() < mpq_class(1, 1 << 30));

  auto g = make_beta({-1, -1, 1});
  auto b = FieldElement::generator(g);
  auto pair = kneading_pair(SystemParams::make(g, 1 - b * mpq_class(1, 2)), 1000);
  auto graph = subshift_graph(pair);
  CHECK(radius_near(entropy(graph), b, mpq_class(1, 1000000000)));

  // Deterministic: at most one edge per label out of each state.
  std::set<std::pair<std::size_t, int>> seen;
  for (const auto& edge : graph.edges) CHECK(seen.insert({edge.from, edge.label}).second);

  // Path labels of length 8 coincide with admissible words of length 8.
  std::set<Digits> from_graph;
  std::function<void(std::size_t, Digits&)> walk = [&](std::size_t s, Digits& w) {
    if (w.size() == 8) {
      from_graph.insert(w);
      return;
    }
    for (const auto& edge : graph.edges)
      if (edge.from == s) {
        w.push_back(static_cast<std::uint8_t>(edge.label));
        walk(edge.to, w);
        w.pop_back();
      }
  };
  for (std::size_t s = 0; s < graph.states; ++s) {
    Digits w;
    walk(s, w);
  }
  std::set<Digits> brute;
  for (unsigned mask = 0; mask < 256; ++mask) {
    Digits w(8);
    for (int i = 0; i < 8; ++i) w[static_cast<std::size_t>(i)] = (mask >> (7 - i)) & 1;
    if (admissible(w, pair, Side::Plus)) brute.insert(w);
  }
  CHECK(from_graph == brute);

  auto r = make_beta({-1, 0, -1, 0, 1});
  auto rb = FieldElement::generator(r);
  auto sofic = subshift_graph(kneading_pair(SystemParams::make(r, 2 - rb * rb), 1000));
  CHECK(radius_near(entropy(sofic), rb, mpq_class(1, 1000000000)));
}
