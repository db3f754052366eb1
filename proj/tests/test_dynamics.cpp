#include <map>
#include <random>

#include "betakit/dynamics.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace betakit;

namespace {

struct Golden {
  AlgebraicNumber beta = make_beta({-1, -1, 1});
  FieldElement b = FieldElement::generator(beta);
  FieldElement q(const mpq_class& v) const { return FieldElement::rational(beta, v); }
};

// Straightforward exact iteration with string-keyed memory, used as an
// oracle for the integer-vector engine.
std::pair<std::size_t, std::size_t> naive_cycle(const SystemParams& sp, Side side, FieldElement x,
                                                std::size_t cap) {
  std::map<std::string, std::size_t> seen;
  for (std::size_t i = 0; i <= cap; ++i) {
    auto [it, fresh] = seen.emplace(x.to_string(), i);
    if (!fresh) return {it->second, i - it->second};
    x = step(sp, side, x).second;
  }
  return {0, 0};
}

}  // namespace

TEST_CASE("step") {
  Golden g;
  auto greedy = SystemParams::make(g.beta, FieldElement(g.beta));
  auto [d1, n1] = step(greedy, Side::Plus, g.q(1));
  CHECK(d1 == 1);
  CHECK(n1 == g.b - 1);

  auto sym = SystemParams::make(g.beta, 1 - g.b * mpq_class(1, 2));
  CHECK(sym.p == g.q(mpq_class(1, 2)));
  auto [d2, n2] = step(sym, Side::Plus, sym.p);
  CHECK(d2 == 1);
  CHECK(n2.is_zero());
  auto [d3, n3] = step(sym, Side::Minus, sym.p);
  CHECK(d3 == 0);
  CHECK(n3 == g.q(1));

  CHECK_THROWS_AS(step(greedy, Side::Plus, g.q(3)), Error);
  CHECK_THROWS_AS(SystemParams::make(g.beta, g.q(mpq_class(1, 2))), Error);
}

TEST_CASE("expansions of one") {
  Golden g;
  auto greedy = SystemParams::make(g.beta, FieldElement(g.beta));
  CHECK(digits_to_string(expand(greedy, Side::Plus, g.q(1), 5)) == "11000");

  auto alpha = 1 - g.b * mpq_class(1, 2);
  auto sym = SystemParams::make(g.beta, alpha);
  auto one = 1 - alpha / (g.b - 1);
  CHECK(digits_to_string(expand(sym, Side::Plus, one, 4)) == "1010");
  CHECK(digits_to_string(expand(sym, Side::Minus, one, 4)) == "1010");

  auto lazy = SystemParams::make(g.beta, 2 - g.b);
  auto one_lazy = 1 - (2 - g.b) / (g.b - 1);
  CHECK(digits_to_string(expand(lazy, Side::Minus, one_lazy, 4)) == "0111");
}

TEST_CASE("orbit records") {
  Golden g;
  auto greedy = SystemParams::make(g.beta, FieldElement(g.beta));
  auto rec = orbit(greedy, Side::Plus, g.q(1), 10);
  CHECK(rec.status().periodic);
  CHECK(rec.status().preperiod == 2);
  CHECK(rec.status().period == 1);
  CHECK(rec.state(0) == g.q(1));
  CHECK(rec.state(1) == g.b - 1);
  CHECK(rec.state(2).is_zero());
  CHECK(rec.state(17).is_zero());
  CHECK(rec.word()->to_string() == "11(0)");

  auto alpha = 1 - g.b * mpq_class(1, 2);
  auto sym = SystemParams::make(g.beta, alpha);
  auto cyc = orbit(sym, Side::Plus, sym.p, 10);
  CHECK(cyc.status().periodic);
  CHECK(cyc.status().preperiod == 0);
  CHECK(cyc.status().period == 3);
  CHECK(cyc.state(1).is_zero());
  CHECK(cyc.state(2) == alpha);
  CHECK(cyc.state(3) == sym.p);

  CHECK_THROWS_AS(orbit(greedy, Side::Plus, g.q(1), 0), Error);
}

TEST_CASE("orbit in Q(sqrt 2)") {
  auto beta = make_beta({-2, 0, 1});
  auto sp = SystemParams::make(beta, FieldElement::rational(beta, mpq_class(1, 3)));
  auto x = FieldElement::rational(beta, mpq_class(1, 7));
  auto rec = orbit(sp, Side::Plus, x, 10);
  auto oracle = naive_cycle(sp, Side::Plus, x, 10);
  CHECK(rec.status().periodic == (oracle.second != 0));
  CHECK(!rec.status().periodic);
  CHECK(rec.status().cap == 10);
  CHECK(rec.length() == 11);
  for (std::size_t i = 0; i <= 10; ++i) {
    auto via_steps = x;
    for (std::size_t k = 0; k < i; ++k) via_steps = step(sp, Side::Plus, via_steps).second;
    CHECK(rec.state(i) == via_steps);
  }
  CHECK_THROWS_AS(rec.state(11), Error);
}

TEST_CASE("projection") {
  Golden g;
  auto greedy = SystemParams::make(g.beta, FieldElement(g.beta));
  CHECK(project(greedy, EventuallyPeriodicWord::parse("11(0)")) == g.q(1));
  auto sp = SystemParams::make(g.beta, (2 - g.b) * mpq_class(1, 3));
  CHECK(project(sp, EventuallyPeriodicWord::parse("(0)")) == sp.left);
  CHECK(project(sp, EventuallyPeriodicWord::parse("(1)")) == sp.right);
}

TEST_CASE("rho vectors and the polynomial identity") {
  Golden g;
  auto greedy = SystemParams::make(g.beta, FieldElement(g.beta));
  auto rec = orbit(greedy, Side::Plus, g.q(1), 10);
  auto r1 = rec.rho(1);
  CHECK(r1.r == std::vector<mpz_class>{1, 0});
  CHECK(r1.shared_den == 1);
  for (std::size_t n : {0, 1, 2, 3, 9}) CHECK(verify_rho_identity(greedy, Side::Plus, g.q(1), n));
  CHECK(rec.bound_trace() >= 1);

  IntPoly p14{1, -1, 0, 1, -1, 0, 1, -1, 0, 0, -1, 1, 0, -2, 1};
  auto beta = make_beta(p14);
  std::mt19937_64 rng(11);
  auto b = FieldElement::generator(beta);
  for (int trial = 0; trial < 5; ++trial) {
    auto alpha = (2 - b) * mpq_class(static_cast<long>(rng() % 19 + 1), 20);
    auto sp = SystemParams::make(beta, alpha);
    auto x = FieldElement::rational(beta, mpq_class(static_cast<long>(rng() % 97), 97));
    CHECK(verify_rho_identity(sp, Side::Plus, x, 20));
    CHECK(verify_rho_identity(sp, Side::Minus, x, 20));
  }
}

TEST_CASE("engine agrees with naive iteration") {
  std::mt19937_64 rng(3);
  for (int m = 2; m <= 4; ++m) {
    auto beta = make_beta(betakit::testing::multinacci(m));
    auto b = FieldElement::generator(beta);
    for (int trial = 0; trial < 15; ++trial) {
      long qd = static_cast<long>(rng() % 12 + 1);
      auto alpha = (2 - b) * mpq_class(static_cast<long>(rng() % (qd + 1)), qd);
      auto sp = SystemParams::make(beta, alpha);
      auto x = FieldElement::rational(beta, mpq_class(static_cast<long>(rng() % 13), 13));
      for (Side side : {Side::Plus, Side::Minus}) {
        auto rec = orbit(sp, side, x, 20000);
        auto oracle = naive_cycle(sp, side, x, 20000);
        REQUIRE(rec.status().periodic);
        CHECK(rec.status().preperiod == oracle.first);
        CHECK(rec.status().period == oracle.second);
      }
    }
  }
}

TEST_CASE("preper_test") {
  Golden g;
  auto sp = SystemParams::make(g.beta, (2 - g.b) * mpq_class(1, 3));
  auto half = g.q(mpq_class(1, 2));
  auto res = preper_test(sp, Side::Plus, half, 1000000);
  auto oracle = naive_cycle(sp, Side::Plus, half, 100000);
  CHECK(res.status.periodic);
  CHECK(res.status.preperiod == oracle.first);
  CHECK(res.status.period == oracle.second);

  auto greedy = SystemParams::make(g.beta, FieldElement(g.beta));
  auto zero = preper_test(greedy, Side::Plus, FieldElement(g.beta), 10);
  CHECK(zero.status.periodic);
  CHECK(zero.status.preperiod == 0);
  CHECK(zero.status.period == 1);
}
