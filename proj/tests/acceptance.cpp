// Acceptance suite: one PASS/FAIL line per criterion, each checked against
// its runtime budget. Exit status is nonzero if any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "betakit/lorenz.hpp"
#include "betakit/format.hpp"
#include "betakit/measure.hpp"
#include "betakit/parse.hpp"

using namespace betakit;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;

  void expect(bool cond, const std::string& what) {
    if (!cond && pass) {
      pass = false;
      detail = what;
    }
  }
};

using Rng = std::mt19937_64;

long uniform(Rng& rng, long lo, long hi) { return lo + static_cast<long>(rng() % static_cast<unsigned long>(hi - lo + 1)); }

AlgebraicNumber beta_of(const std::string& text) { return parse_beta(text); }

// Sum c_i beta^i / q with |c_i| <= range.
FieldElement random_element(const AlgebraicNumber& beta, Rng& rng, long q, long range) {
  std::vector<mpz_class> c(static_cast<std::size_t>(beta.degree()));
  for (auto& v : c) v = uniform(rng, -range, range);
  return FieldElement(beta, c, q);
}

bool in_unit(const FieldElement& x) { return x.sign() >= 0 && compare(x, FieldElement::integer(x.beta(), 1)) != Ordering::Greater; }

// Random point of [0,1] in (1/q) Z[beta] with coefficients bounded by q.
FieldElement random_unit_point(const AlgebraicNumber& beta, Rng& rng, long q) {
  for (;;) {
    auto x = random_element(beta, rng, q, q);
    if (in_unit(x)) return x;
  }
}

// Random alpha in [0, 2 - beta] from (1/q) Z[beta].
FieldElement random_alpha(const AlgebraicNumber& beta, Rng& rng, long q) {
  auto limit = 2 - FieldElement::generator(beta);
  for (;;) {
    auto a = random_element(beta, rng, q, q);
    if (a.sign() >= 0 && compare(a, limit) != Ordering::Greater) return a;
  }
}

std::string word_of_one(const AlgebraicNumber& beta, const FieldElement& alpha, Side side) {
  auto sp = SystemParams::make(beta, alpha);
  auto x = 1 - alpha / (FieldElement::generator(beta) - 1);
  auto w = orbit(sp, side, x, 1000000).word();
  return w ? w->to_string() : "<open>";
}

// ---------------------------------------------------------------------------

Outcome golden_expansions() {
  Outcome o;
  auto g = beta_of("z^2-z-1");
  auto b = FieldElement::generator(g);
  o.expect(word_of_one(g, FieldElement(g), Side::Plus) == "11(0)", "greedy expansion");
  for (auto side : {Side::Plus, Side::Minus})
    o.expect(word_of_one(g, 1 - b * mpq_class(1, 2), side) == "(10)", "symmetric expansion");
  o.expect(word_of_one(g, 2 - b, Side::Minus) == "0(1)", "lazy expansion");

  auto u = beta_of("z^14-2z^13+z^11-z^10-z^7+z^6-z^4+z^3-z+1");
  auto ub = FieldElement::generator(u);
  Rng rng(101);
  std::vector<FieldElement> alphas{FieldElement(u), 2 - ub};
  while (alphas.size() < 5) alphas.push_back((2 - ub) * mpq_class(uniform(rng, 1, 98), 99));
  for (const auto& a : alphas)
    for (auto side : {Side::Plus, Side::Minus})
      o.expect(word_of_one(u, a, side) == "111001011(1001010)", "univoque expansion at alpha = " + exact_string(a));
  return o;
}

Outcome sofic_example() {
  Outcome o;
  auto r = beta_of("z^4-z^2-1");
  auto pair = kneading_pair(SystemParams::make(r, parse_field_element("2-beta2", r)), 1000000);
  o.expect(pair.upper.to_string() == "(1001)", "upper invariant " + pair.upper.to_string());
  o.expect(pair.lower.to_string() == "01(10)", "lower invariant " + pair.lower.to_string());
  o.expect(classify_shift(pair) == ShiftTag::SoficNotSFT, "classification");
  return o;
}

Outcome multinacci_prefixes() {
  Outcome o;
  Rng rng(202);
  for (int m = 2; m <= 6; ++m) {
    auto beta = beta_of("beta" + std::to_string(m));
    auto b = FieldElement::generator(beta);
    std::string up_expected = "1" + std::string(static_cast<std::size_t>(m), '0');
    std::string lo_expected = "0" + std::string(static_cast<std::size_t>(m), '1');
    for (int t = 0; t < 25; ++t) {
      FieldElement y(beta);
      while (y.is_zero()) y = random_element(beta, rng, uniform(rng, 1, 7), 5);
      auto y2 = y * y;
      auto alpha = (2 - b) * y2 / (1 + y2);
      auto sp = SystemParams::make(beta, alpha);
      auto pair = kneading_pair(sp, 64);
      auto cut = [&](const KneadingWord& w) {
        return digits_to_string(Digits(w.prefix.begin(), w.prefix.begin() + m + 1));
      };
      o.expect(cut(pair.upper) == up_expected, "upper prefix for m = " + std::to_string(m));
      o.expect(cut(pair.lower) == lo_expected, "lower prefix for m = " + std::to_string(m));
      auto up = sp.p, lo = sp.p;
      for (int i = 0; i <= m; ++i) {
        up = step(sp, Side::Plus, up).second;
        lo = step(sp, Side::Minus, lo).second;
      }
      o.expect(up == lo && up == alpha * b.pow(m), "orbit equality for m = " + std::to_string(m));
    }
  }
  return o;
}

Outcome pisot_periodicity() {
  Outcome o;
  Rng rng(303);
  int violations = 0;
  for (int m = 2; m <= 4; ++m) {
    auto beta = beta_of("beta" + std::to_string(m));
    auto b = FieldElement::generator(beta);
    for (int t = 0; t < 100; ++t) {
      // alpha and x share one denominator q <= 50.
      long q = uniform(rng, 1, 50);
      auto sp = SystemParams::make(beta, random_alpha(beta, rng, q));
      auto x = random_unit_point(beta, rng, q);
      auto side = t % 2 ? Side::Minus : Side::Plus;
      try {
        auto r = preper_test(sp, side, x, 1000000);
        o.expect(r.status.periodic, "orbit did not close");
      } catch (const Error& e) {
        if (e.code() == ErrorCode::PisotGuaranteeViolated) ++violations;
        o.expect(false, e.what());
      }
    }
  }
  o.expect(violations == 0, std::to_string(violations) + " guarantee violations");
  return o;
}

Outcome sft_search() {
  Outcome o;
  auto g = beta_of("z^2-z-1");
  auto b = FieldElement::generator(g);
  mpq_class eps(1, 10000);
  auto check = [&](const FieldElement& alpha, const std::string& at, bool must_move) {
    try {
      auto r = search_sft_alpha(g, alpha, eps);
      auto& a = r.alpha_prime;
      o.expect(a.sign() > 0 && compare(a, 2 - b) == Ordering::Less, "alpha' outside the open range" + at);
      o.expect(approximate(abs(a - alpha), mpq_class(1, 1u << 30)).hi < eps, "alpha' too far" + at);
      if (must_move) o.expect(a != alpha, "search did not move" + at);
      // Recompute the invariants from scratch: SFT iff both shifted invariants are periodic.
      auto pair = kneading_pair(SystemParams::make(g, a), 1000000);
      bool closed = pair.upper.exact && pair.lower.exact;
      o.expect(closed, "invariants did not close" + at);
      if (!closed) return;
      o.expect(pair.upper.exact->shifted().purely_periodic() && pair.lower.exact->shifted().purely_periodic(),
               "shifted invariants not periodic" + at);
      o.expect(pair.upper.exact->purely_periodic() == pair.lower.exact->purely_periodic(),
               "periodicity of the two invariants differs" + at);
      o.expect(pair.upper.exact->purely_periodic(), "invariants not periodic" + at);
      o.expect(classify_shift(pair) == ShiftTag::SFT, "classification" + at);
    } catch (const Error& e) {
      o.expect(false, std::string(e.what()) + at);
    }
  };
  for (long i = 1; i <= 50; ++i) check((2 - b) * mpq_class(i, 51), " at grid point " + std::to_string(i), false);

  // The grid points above already carry periodic critical orbits, so also start
  // from parameters whose shift is sofic but not of finite type.
  int moved = 0;
  for (int q = 1; q <= 3 && moved < 20; ++q) {
    for (int d = 1; d <= 30 && moved < 20; ++d) {
      for (int c = -2 * d; c <= 0 && moved < 20; ++c) {
        if (std::gcd(std::gcd(c, d), q) != 1) continue;
        auto alpha = (c + b * mpq_class(d)) * mpq_class(1, q);
        if (alpha.sign() <= 0 || compare(alpha, 2 - b) != Ordering::Less) continue;
        if (classify_shift(kneading_pair(SystemParams::make(g, alpha), 100000)) == ShiftTag::SFT) continue;
        check(alpha, " from " + alpha.to_string(), true);
        ++moved;
      }
    }
  }
  o.expect(moved == 20, "only " + std::to_string(moved) + " non-SFT starting points");
  if (o.pass) o.detail = "50 grid points and 20 non-SFT starting points";
  return o;
}

// Exact cylinder of a finite word for T+ on J, as an interval with open/closed ends.
bool cylinder_nonempty(const SystemParams& sp, const Digits& w) {
  auto b = FieldElement::generator(sp.beta);
  auto lo = sp.left, hi = sp.right;
  bool lo_closed = true, hi_closed = true;
  for (auto d : w) {
    if (d == 0) {
      if (compare(hi, sp.p) != Ordering::Less) {
        hi = sp.p;
        hi_closed = false;
      }
    } else if (compare(lo, sp.p) != Ordering::Greater) {
      if (lo != sp.p) lo_closed = true;
      lo = sp.p;
    }
    auto c = compare(lo, hi);
    if (c == Ordering::Greater || (c == Ordering::Equal && !(lo_closed && hi_closed))) return false;
    lo = b * lo + sp.alpha - d;
    hi = b * hi + sp.alpha - d;
  }
  return true;
}

Outcome structure_properties() {
  Outcome o;
  Rng rng(606);
  std::vector<AlgebraicNumber> betas{beta_of("beta2"), beta_of("beta3"), beta_of("beta4"), beta_of("z^3-z-1")};
  for (int t = 0; t < 200; ++t) {
    const auto& beta = betas[static_cast<std::size_t>(t) % betas.size()];
    auto b = FieldElement::generator(beta);
    long q = uniform(rng, 1, 50);
    auto sp = SystemParams::make(beta, random_alpha(beta, rng, q));
    auto x = random_unit_point(beta, rng, q);
    auto side = rng() % 2 ? Side::Minus : Side::Plus;
    auto n = static_cast<std::size_t>(uniform(rng, 0, 50));
    auto rec = orbit(sp, side, x, 1000000);
    auto w = rec.word();
    o.expect(w.has_value(), "orbit did not close");
    if (!w) continue;
    o.expect(project(sp, w->shifted(n)) == rec.state(n), "projection does not commute with the shift");
    auto pair = kneading_pair(sp, 1000000);
    o.expect(admissible(*w, pair, side), "expansion not admissible: " + w->to_string());
  }

  auto g = beta_of("z^2-z-1");
  auto sp = SystemParams::make(g, 1 - FieldElement::generator(g) * mpq_class(1, 2));
  auto pair = kneading_pair(sp, 1000000);
  o.expect(classify_shift(pair) == ShiftTag::SFT, "language instance is not SFT");
  auto graph = subshift_graph(pair);
  for (unsigned code = 0; code < 256; ++code) {
    Digits w(8);
    for (int i = 0; i < 8; ++i) w[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>((code >> (7 - i)) & 1);
    long s = static_cast<long>(graph.initial);
    for (auto d : w)
      if (s >= 0) s = graph.follow(static_cast<std::size_t>(s), d);
    bool by_graph = s >= 0;
    bool by_cylinder = cylinder_nonempty(sp, w);
    bool by_kneading = admissible(w, pair, Side::Plus);
    o.expect(by_graph == by_cylinder && by_cylinder == by_kneading, "language mismatch on " + digits_to_string(w));
  }
  return o;
}

Outcome region_identities() {
  Outcome o;
  auto r = beta_of("z^4-z^2-1");
  auto rb = FieldElement::generator(r);
  o.expect(interval_Ink(2, 1, r).hi == 2 - rb * rb, "upper endpoint of I_{2,1}");
  auto s2 = beta_of("z^2-2");
  auto single = interval_Ink(2, 1, s2);
  o.expect(single.singleton() && single.lo == (2 + FieldElement::generator(s2)).inverse(), "singleton region");

  auto g = beta_of("z^2-z-1");
  auto b = FieldElement::generator(g);
  o.expect(transitivity(SystemParams::make(g, 1 - b * mpq_class(1, 2))).transitive, "symmetric golden system");

  auto field = root_field(g, 2);
  Rng rng(707);
  for (int t = 0; t < 20; ++t) {
    FieldElement alpha(g);
    do {
      alpha = random_element(g, rng, uniform(rng, 1, 30), 30);
    } while (alpha.sign() < 0 || compare(alpha, 2 - b) == Ordering::Greater);
    auto a = alpha_nk(g, alpha, 2, 1);
    auto back = renorm_down(SystemParams::make(field, a), 2, 1);
    auto pulled = pull_back_power(back, g, 2);
    o.expect(pulled && *pulled == alpha, "round trip at alpha = " + exact_string(alpha));
    auto rep = verify_conjugacy(g, alpha, 2, 1, 20);
    o.expect(rep.ok() && rep.samples == 20, "conjugacy at alpha = " + exact_string(alpha));
  }
  return o;
}

Outcome invariant_density() {
  Outcome o;
  auto g = beta_of("z^2-z-1");
  auto b = FieldElement::generator(g);
  auto d = parry_density(SystemParams::make(g, FieldElement(g)), 10);
  o.expect(d.exact() && d.breakpoints.size() == 3, "closed form shape");
  if (d.breakpoints.size() == 3) {
    o.expect(d.breakpoints[1] == b.inverse(), "breakpoint 1/beta");
    o.expect(d.values[0] == 1 + b.inverse() && d.values[1] == FieldElement::integer(g, 1), "closed form values");
  }

  Rng rng(808);
  std::vector<AlgebraicNumber> betas{beta_of("beta2"), beta_of("beta3"), beta_of("z^3-z-1"), beta_of("z^2-2"),
                                     beta_of("z^4-z^2-1")};
  int exact = 0, truncated = 0;
  for (int t = 0; t < 50; ++t) {
    const auto& beta = betas[static_cast<std::size_t>(t) % betas.size()];
    auto bb = FieldElement::generator(beta);
    auto sp = SystemParams::make(beta, (2 - bb) * mpq_class(uniform(rng, 0, 1000), 1000));
    const std::size_t order = 400;
    auto dens = parry_density(sp, order);
    (dens.exact() ? exact : truncated)++;
    if (dens.exact()) {
      for (const auto& v : dens.values) o.expect(v.sign() >= 0, "negative density");
    } else {
      for (const auto& e : dens.enclosures(mpq_class(1, 1u << 20))) o.expect(e.hi >= 0, "certifiably negative density");
    }
    auto rep = check_invariance(sp, order, 16);
    if (dens.exact())
      o.expect(rep.exact_zero, "nonzero discrepancy with an exact density");
    else
      o.expect(rep.max_discrepancy <= 2 * dens.tail_bound, "discrepancy above twice the tail bound");
  }
  o.expect(exact > 0 && truncated > 0, "sample mix");
  return o;
}

Outcome entropy_oracle() {
  Outcome o;
  auto check = [&](const std::string& poly, const std::string& alpha) {
    auto beta = beta_of(poly);
    auto pair = kneading_pair(SystemParams::make(beta, parse_field_element(alpha, beta)), 1000000);
    auto e = entropy(subshift_graph(pair));
    auto bt = approximate(FieldElement::generator(beta), mpq_class(1, mpz_class("1000000000000")));
    mpq_class tol(1, 1000000000);
    o.expect(e.radius.width() <= tol, "radius enclosure too wide for " + poly);
    o.expect(e.radius.lo <= bt.hi + tol && bt.lo <= e.radius.hi + tol, "spectral radius differs from beta for " + poly);
  };
  check("z^2-z-1", "1-beta/2");
  check("z^4-z^2-1", "2-beta2");
  return o;
}

struct Criterion {
  int id;
  const char* name;
  double budget_seconds;
  std::function<Outcome()> run;
};

}  // namespace

int main() {
  std::vector<Criterion> criteria{
      {1, "golden expansions of one", 5, golden_expansions},
      {2, "kneading pair of the sofic example", 1, sofic_example},
      {3, "multinacci kneading prefixes and orbit equality", 30, multinacci_prefixes},
      {4, "eventual periodicity over Pisot multinacci fields", 120, pisot_periodicity},
      {5, "SFT parameter search on a 50-point grid", 300, sft_search},
      {6, "projection/shift commutation and admissibility closure", 120, structure_properties},
      {7, "transitivity region identities", 60, region_identities},
      {8, "Parry density closed form, sign and invariance", 120, invariant_density},
      {9, "entropy equals log beta (external oracle)", 30, entropy_oracle},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (out.pass && secs > c.budget_seconds) {
      out.pass = false;
      out.detail = "over the time budget";
    }
    if (!out.pass) ++failures;
    std::printf("%s criterion %d: %s [%.2f s of %.0f s]%s%s\n", out.pass ? "PASS" : "FAIL", c.id, c.name, secs,
                c.budget_seconds, out.detail.empty() ? "" : " -- ", out.detail.c_str());
    std::fflush(stdout);
  }
  return failures == 0 ? 0 : 1;
}
