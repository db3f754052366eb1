#include <random>

#include "betakit/algebraic.hpp"
#include "doctest.h"
#include "test_support.hpp"

using namespace betakit;
using betakit::testing::multinacci;

TEST_CASE("golden mean isolation") {
  auto b = make_beta({-1, -1, 1});
  auto iv = b.isolate();
  CHECK(iv.lo >= mpq_class(3, 2));
  CHECK(iv.hi <= mpq_class(13, 8));
  CHECK(iv.width() <= mpq_class(1, 1 << 20));
  // Exact sign change of P across the interval.
  CHECK(poly::sign_at(b.coefficients(), iv.lo) < 0);
  CHECK(poly::sign_at(b.coefficients(), iv.hi) > 0);
}

TEST_CASE("make_beta rejects bad inputs") {
  auto code_of = [](IntPoly p) {
    try {
      make_beta(std::move(p));
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::Usage;
  };
  CHECK(code_of({2, -3, 1}) == ErrorCode::NoRootInRange);
  // (z^2-5)(z^2-6): all real roots lie outside (1,2).
  CHECK(code_of({30, 0, -11, 0, 1}) == ErrorCode::NoRootInRange);
  // (z^2 - 2)(z^2 - z - 1) has sqrt2 and the golden mean in (1,2).
  CHECK(code_of(poly::multiply(IntPoly{-2, 0, 1}, IntPoly{-1, -1, 1})) ==
        ErrorCode::MultipleRootsInRange);
  CHECK(code_of(poly::multiply(IntPoly{-1, -1, 1}, IntPoly{-1, -1, 1})) == ErrorCode::NotSquareFree);
  CHECK(code_of({-1, -1, 2}) == ErrorCode::Usage);
}

TEST_CASE("degree fourteen example isolates") {
  IntPoly p{1, -1, 0, 1, -1, 0, 1, -1, 0, 0, -1, 1, 0, -2, 1};
  auto b = make_beta(p);
  CHECK(b.isolate().width() <= mpq_class(1, 1 << 20));
  auto iv = approximate(FieldElement::generator(b), mpq_class("1/1000000000000000"));
  CHECK(iv.midpoint().get_d() == doctest::Approx(1.88000047865555).epsilon(1e-13));
  CHECK(b.number_class().tag == NumberTag::Pisot);
}

TEST_CASE("field arithmetic in Q(golden mean)") {
  auto b = make_beta({-1, -1, 1});
  auto g = FieldElement::generator(b);
  auto sq = g * g;
  CHECK(sq.numerator() == std::vector<mpz_class>{1, 1});
  CHECK(sq.denominator() == 1);
  auto inv = g.inverse();
  CHECK(inv.numerator() == std::vector<mpz_class>{-1, 1});
  CHECK((g + (-g)).is_zero());
  CHECK_THROWS_AS(FieldElement(b).inverse(), Error);
  auto half = FieldElement::rational(b, mpq_class(1, 2));
  auto x = g * half;
  CHECK(x.to_string() == "[0,1]/2");
}

TEST_CASE("ordering") {
  auto b = make_beta({-1, -1, 1});
  auto g = FieldElement::generator(b);
  // P(8/5) = 64/25 - 40/25 - 25/25 = -1/25 < 0, and P is increasing on (1,2).
  mpq_class e(8, 5);
  CHECK(e * e - e - 1 == mpq_class(-1, 25));
  CHECK(compare(g, FieldElement::rational(b, e)) == Ordering::Greater);
  CHECK(compare(g, g) == Ordering::Equal);
  CHECK(compare(g * g, g + 1) == Ordering::Equal);
  CHECK(compare(FieldElement::rational(b, mpq_class(13, 8)), g) == Ordering::Greater);
}

TEST_CASE("approximate") {
  auto b = make_beta({-1, -1, 1});
  auto g = FieldElement::generator(b);
  mpq_class w(1, 1000000);
  auto iv = approximate(g, w);
  CHECK(iv.width() <= w);
  // (1 + sqrt 5)/2 = 1.6180339887...
  CHECK(iv.lo <= mpq_class(16180340, 10000000));
  CHECK(iv.hi >= mpq_class(16180339, 10000000));
  auto z = approximate(FieldElement(b), w);
  CHECK(z.lo == 0);
  CHECK(z.hi == 0);
  auto c = approximate(2 - g, w);
  CHECK(c.lo <= mpq_class(381967, 1000000));
  CHECK(c.hi >= mpq_class(381966, 1000000));
}

TEST_CASE("field axioms on random elements") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-9, 9), den(1, 12);
  for (IntPoly p : {IntPoly{-1, -1, 1}, multinacci(3), IntPoly{-1, 0, -1, 0, 1}}) {
    auto b = make_beta(p);
    auto random_element = [&] {
      std::vector<mpz_class> num(static_cast<std::size_t>(b.degree()));
      for (auto& c : num) c = coef(rng);
      return FieldElement(b, num, den(rng));
    };
    for (int i = 0; i < 1000; ++i) {
      auto x = random_element(), y = random_element(), z = random_element();
      CHECK((x * y) * z == x * (y * z));
      CHECK((x + y) * z == x * z + y * z);
      if (!x.is_zero()) CHECK(x * x.inverse() == FieldElement::integer(b, 1));
      auto ord = compare(x, y);
      if (ord != Ordering::Equal) {
        auto ix = approximate(x, mpq_class(1, 1 << 30));
        auto iy = approximate(y, mpq_class(1, 1 << 30));
        if (ord == Ordering::Less)
          CHECK(ix.hi < iy.lo);
        else
          CHECK(iy.hi < ix.lo);
      }
    }
  }
}

TEST_CASE("classification") {
  for (int m = 2; m <= 8; ++m) {
    auto b = make_beta(multinacci(m));
    INFO("m = " << m);
    CHECK(b.number_class().tag == NumberTag::Pisot);
    CHECK(b.number_class().conjugate_bounds.size() == static_cast<std::size_t>(m - 1));
  }
  auto golden = make_beta({-1, -1, 1});
  const auto& gc = golden.number_class();
  REQUIRE(gc.conjugate_bounds.size() == 1);
  CHECK(gc.conjugate_bounds[0].modulus_hi < mpq_class(619, 1000));
  CHECK(gc.conjugate_bounds[0].modulus_lo > mpq_class(617, 1000));

  CHECK(make_beta({-2, 0, 1}).number_class().tag == NumberTag::Other);
  const auto& sq = make_beta({-1, 0, -1, 0, 1}).number_class();
  CHECK(sq.tag == NumberTag::Other);
  CHECK(sq.diagnostic.empty());

  // Lehmer's polynomial: the smallest known Salem number.
  auto lehmer = make_beta({1, 1, 0, -1, -1, -1, -1, -1, 0, 1, 1});
  CHECK(lehmer.number_class().tag == NumberTag::Salem);
  // z^3 - z - 1 is the plastic number, Pisot; z^3 - 2 has complex conjugates of modulus beta.
  CHECK(make_beta({-1, -1, 0, 1}).number_class().tag == NumberTag::Pisot);
  CHECK(make_beta({-2, 0, 0, 1}).number_class().tag == NumberTag::Other);
}
