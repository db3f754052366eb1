#include "betakit/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "betakit/format.hpp"
#include "betakit/lorenz.hpp"
#include "betakit/measure.hpp"
#include "betakit/parse.hpp"
#include "json.hpp"

#ifndef BETAKIT_GOLDEN_DIR
#define BETAKIT_GOLDEN_DIR "golden/v1"
#endif

namespace betakit::cli {

using Json = nlohmann::ordered_json;

namespace {

struct Options {
  std::string beta;
  std::string alpha = "0";
  std::string side = "plus";
  std::string x;
  std::string word;
  std::string eps;
  std::string format = "json";
  std::string task = "classify";
  std::string id;
  std::string golden_dir = default_golden_dir();
  int n = 0;
  int k = 0;
  int n_max = 4;
  std::size_t order = 1000;
  std::size_t samples = 0;
  std::size_t show = 16;
  std::size_t length = 0;
  std::size_t points = 11;
  std::size_t jobs = 0;
  bool update = false;
};

[[noreturn]] void usage(const std::string& msg) { throw Error(ErrorCode::Usage, msg); }

std::vector<Side> parse_sides(const std::string& s) {
  if (s == "plus") return {Side::Plus};
  if (s == "minus") return {Side::Minus};
  if (s == "both") return {Side::Plus, Side::Minus};
  usage("side must be plus, minus or both");
}

Format parse_format(const std::string& s) {
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  if (s == "plain") return Format::Plain;
  usage("format must be json, csv or plain");
}

void require_format(const RunConfig& cfg, std::initializer_list<Format> allowed, const char* command) {
  if (std::find(allowed.begin(), allowed.end(), cfg.format) == allowed.end())
    usage(std::string("output format not supported by ") + command);
}

class Context {
 public:
  Context(const Options& o, const RunConfig& c) : opt(o), cfg(c) {}

  const AlgebraicNumber& beta() {
    if (!beta_) {
      if (opt.beta.empty()) usage("--beta is required");
      BetaOptions bo;
      bo.refine_floor_bits = cfg.refine_floor;
      beta_ = parse_beta(opt.beta, bo);
    }
    return *beta_;
  }
  FieldElement element(const std::string& text) { return parse_field_element(text, beta()); }
  SystemParams params() { return SystemParams::make(beta(), element(opt.alpha)); }

  Json num(const FieldElement& x) const {
    auto d = to_decimal(x, cfg.precision);
    return Json{{"exact", exact_string(x)}, {"decimal", d.text}, {"width", scientific_upper(d.width)}};
  }
  Json interval(const RationalInterval& iv) const {
    return Json{{"lo", round_directed(iv.lo, cfg.precision, false)},
                {"hi", round_directed(iv.hi, cfg.precision, true)},
                {"width", scientific_upper(iv.hi - iv.lo)}};
  }
  std::string dec(const FieldElement& x) const { return to_decimal(x, cfg.precision).text; }

  const Options& opt;
  const RunConfig& cfg;

 private:
  std::optional<AlgebraicNumber> beta_;
};

std::string spaced(const EventuallyPeriodicWord& w) {
  std::string s;
  for (auto d : w.preperiod()) s += std::to_string(d) + " ";
  s += "(";
  for (std::size_t i = 0; i < w.period().size(); ++i) s += (i ? " " : "") + std::to_string(w.period()[i]);
  return s + ")";
}

Json word_or_null(const std::optional<EventuallyPeriodicWord>& w) {
  return w ? Json(w->to_string()) : Json(nullptr);
}

void emit(std::ostream& out, const Json& j) { out << j.dump() << "\n"; }

// ---------------------------------------------------------------- expand / orbit

struct ExpansionResult {
  Side side;
  std::optional<EventuallyPeriodicWord> word;
  Digits prefix;
  std::optional<FieldElement> value;
};

ExpansionResult expansion_of(const SystemParams& sp, Side side, const FieldElement& x, std::size_t length,
                             std::size_t cap) {
  auto shift = sp.alpha / (FieldElement::generator(sp.beta) - 1);
  auto y = x - shift;
  if (!sp.contains(y)) throw Error(ErrorCode::OutOfDomain, "x must lie in [0, 1/(beta-1)]");
  auto rec = orbit(sp, side, y, cap);
  ExpansionResult r{side, rec.word(), {}, std::nullopt};
  if (r.word) {
    r.prefix = r.word->prefix(length);
    r.value = project(sp, *r.word) + shift;
  } else {
    r.prefix = Digits(rec.digits().begin(), rec.digits().begin() + static_cast<long>(std::min(length, rec.length())));
  }
  return r;
}

int cmd_expand(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json, Format::Plain}, "expand");
  auto sp = c.params();
  auto x = c.element(c.opt.x.empty() ? "1" : c.opt.x);
  std::size_t length = c.opt.length ? c.opt.length : c.cfg.prefix_len;
  int code = kSuccess;
  Json list = Json::array();
  for (auto side : parse_sides(c.opt.side)) {
    auto r = expansion_of(sp, side, x, length, c.cfg.orbit_cap);
    if (!r.word) code = kCapExhausted;
    if (c.cfg.format == Format::Plain) {
      out << to_string(side) << " " << (r.word ? spaced(*r.word) : digits_to_string(r.prefix) + "...");
      if (r.value) out << " value " << exact_string(*r.value);
      out << "\n";
      continue;
    }
    list.push_back(Json{{"side", to_string(side)},
                        {"word", word_or_null(r.word)},
                        {"prefix", digits_to_string(r.prefix)},
                        {"value", r.value ? c.num(*r.value) : Json(nullptr)}});
  }
  if (c.cfg.format == Format::Json) emit(out, Json{{"x", c.num(x)}, {"expansions", list}});
  return code;
}

int cmd_orbit(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json, Format::Plain}, "orbit");
  if (c.opt.x.empty()) usage("--x is required");
  auto sp = c.params();
  auto x = c.element(c.opt.x);
  int code = kSuccess;
  Json list = Json::array();
  for (auto side : parse_sides(c.opt.side)) {
    auto rec = orbit(sp, side, x, c.cfg.orbit_cap);
    const auto& st = rec.status();
    if (!st.periodic) code = kCapExhausted;
    auto word = rec.word();
    bool truncated = !st.periodic && rec.length() > c.cfg.prefix_len;
    Digits digits(rec.digits().begin(),
                  rec.digits().begin() + static_cast<long>(truncated ? c.cfg.prefix_len : rec.length()));
    if (c.cfg.format == Format::Plain) {
      out << to_string(side) << " "
          << (st.periodic ? "periodic k=" + std::to_string(st.preperiod) + " n=" + std::to_string(st.period)
                          : "cap=" + std::to_string(st.cap))
          << " " << (word ? word->to_string() : digits_to_string(digits) + "...") << "\n";
      continue;
    }
    Json states = Json::array();
    for (std::size_t i = 0; i < std::min(c.opt.show, rec.length() + 1); ++i) states.push_back(c.num(rec.state(i)));
    Json status{{"periodic", st.periodic},
                {"k", st.periodic ? Json(st.preperiod) : Json(nullptr)},
                {"n", st.periodic ? Json(st.period) : Json(nullptr)},
                {"cap", st.cap}};
    list.push_back(Json{{"side", to_string(side)},
                        {"status", status},
                        {"word", word_or_null(word)},
                        {"digits", digits_to_string(digits)},
                        {"digits_truncated", truncated},
                        {"states", states}});
  }
  if (c.cfg.format == Format::Json) emit(out, Json{{"x", c.num(x)}, {"orbits", list}});
  return code;
}

// ---------------------------------------------------------------- kneading

KneadingPair pair_of(Context& c) { return kneading_pair(c.params(), c.cfg.orbit_cap, c.cfg.prefix_len); }

int cmd_kneading(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json, Format::Plain}, "kneading");
  auto pair = pair_of(c);
  if (c.cfg.format == Format::Plain)
    out << "upper " << pair.upper.to_string() << "\nlower " << pair.lower.to_string() << "\n";
  else
    emit(out, Json{{"upper", pair.upper.to_string()},
                   {"lower", pair.lower.to_string()},
                   {"truncated", pair.truncated()}});
  return pair.truncated() ? kCapExhausted : kSuccess;
}

int cmd_classify(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json, Format::Plain}, "classify");
  auto pair = pair_of(c);
  auto tag = classify_shift(pair);
  if (c.cfg.format == Format::Plain)
    out << to_string(tag) << " " << pair.upper.to_string() << " " << pair.lower.to_string() << "\n";
  else
    emit(out, Json{{"class", to_string(tag)}, {"upper", pair.upper.to_string()}, {"lower", pair.lower.to_string()}});
  return tag == ShiftTag::Unknown ? kCapExhausted : kSuccess;
}

int cmd_admissible(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json, Format::Plain}, "admissible");
  if (c.opt.word.empty()) usage("--word is required");
  auto pair = pair_of(c);
  bool finite = c.opt.word.find('(') == std::string::npos;
  Json list = Json::array();
  int code = kSuccess;
  for (auto side : parse_sides(c.opt.side)) {
    bool ok = false;
    if (finite) {
      ok = admissible(digits_from_string(c.opt.word), pair, side);
    } else {
      if (pair.truncated()) throw Error(ErrorCode::NotSoficInput, "kneading invariants did not close within the cap");
      ok = admissible(EventuallyPeriodicWord::parse(c.opt.word), pair, side);
    }
    if (c.cfg.format == Format::Plain)
      out << to_string(side) << " " << (ok ? "admissible" : "not-admissible") << "\n";
    else
      list.push_back(Json{{"side", to_string(side)}, {"admissible", ok}});
  }
  if (c.cfg.format == Format::Json) emit(out, Json{{"word", c.opt.word}, {"results", list}});
  return code;
}

int cmd_graph(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json}, "graph");
  auto g = subshift_graph(pair_of(c));
  Json adjacency = Json::array();
  for (std::size_t s = 0; s < g.states; ++s) adjacency.push_back(Json::array());
  for (const auto& e : g.edges) adjacency[e.from].push_back(Json{{"label", e.label}, {"to", e.to}});
  emit(out, Json{{"states", g.states}, {"initial", g.initial}, {"labels", g.state_labels}, {"adjacency", adjacency}});
  return kSuccess;
}

int cmd_entropy(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json}, "entropy");
  auto g = subshift_graph(pair_of(c));
  auto e = entropy(g);
  emit(out, Json{{"beta", c.num(FieldElement::generator(c.beta()))},
                 {"spectral_radius", c.interval(e.radius)},
                 {"entropy", c.interval(e.log_radius)}});
  return kSuccess;
}

int cmd_search_sft(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json}, "search-sft");
  if (c.opt.eps.empty()) usage("--eps is required");
  SearchOptions so{c.cfg.period_cap, c.cfg.prefix_len};
  auto r = search_sft_alpha(c.beta(), c.element(c.opt.alpha), parse_rational(c.opt.eps), so, c.cfg.orbit_cap);
  emit(out, Json{{"alpha_prime", c.num(r.alpha_prime)},
                 {"kneading_upper", r.pair.upper.to_string()},
                 {"kneading_lower", r.pair.lower.to_string()},
                 {"class", to_string(r.tag)}});
  return kSuccess;
}

// ---------------------------------------------------------------- regions

Json region_json(Context& c, const TransitivityResult& tr) {
  Json j{{"transitive", tr.transitive}, {"n", nullptr}, {"k", nullptr}, {"interval", nullptr},
         {"experimental", tr.experimental}};
  if (tr.region) {
    j["n"] = tr.region->n;
    j["k"] = tr.region->k;
    j["interval"] = Json::array({c.num(tr.region->lo), c.num(tr.region->hi)});
  }
  return j;
}

int cmd_region(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json}, "region");
  emit(out, region_json(c, transitivity(c.params(), 64, c.cfg.strict)));
  return kSuccess;
}

// Largest grid step with (1 + c)^n <= 2, c a multiple of 10^-6.
mpq_class root_two_minus_one(int n) {
  mpz_class num(static_cast<long>((std::pow(2.0, 1.0 / n) - 1.0) * 1e6));
  auto ok = [&](const mpz_class& v) {
    mpq_class b = 1 + mpq_class(v, 1000000), p = 1;
    for (int i = 0; i < n; ++i) p *= b;
    return p <= 2;
  };
  while (!ok(num)) --num;
  return mpq_class(num, 1000000);
}

int cmd_region_plot(Context& c, std::ostream& out) {
  if (c.cfg.format == Format::Plain) usage("region-plot writes csv or json");
  if (c.opt.n_max < 2) usage("--n-max must be at least 2");
  std::size_t samples = c.opt.samples ? c.opt.samples : 50;
  bool csv = c.cfg.format == Format::Csv;
  Json rows = Json::array();
  if (csv) out << "n,k,beta,lo,hi\n";
  for (int n = 2; n <= c.opt.n_max; ++n) {
    auto span = root_two_minus_one(n);
    for (int k = 1; k < n; ++k) {
      if (std::gcd(n, k) != 1) continue;
      for (std::size_t i = 1; i <= samples; ++i) {
        mpq_class b = 1 + span * mpq_class(static_cast<long>(i), static_cast<long>(samples));
        auto [lo, hi] = interval_Ink_at(n, k, b);
        auto d = [&](const mpq_class& q) { return round_half_even(q, c.cfg.precision); };
        if (csv)
          out << n << "," << k << "," << d(b) << "," << d(lo) << "," << d(hi) << "\n";
        else
          rows.push_back(Json{{"n", n}, {"k", k}, {"beta", d(b)}, {"lo", d(lo)}, {"hi", d(hi)}});
      }
    }
  }
  if (!csv) emit(out, rows);
  return kSuccess;
}

void check_experimental(const Context& c, int k) {
  if (k >= 2 && c.cfg.strict)
    throw Error(ErrorCode::ExperimentalRegionHit, "k >= 2 uses the experimental region formula");
}

void require_nk(const Context& c) {
  if (c.opt.n < 2 || c.opt.k < 1) usage("--n >= 2 and --k >= 1 are required");
}

// The base field Q(beta^n) when the polynomial of beta is Q(z^n).
std::optional<AlgebraicNumber> base_field(const AlgebraicNumber& gamma, int n) {
  const auto& p = gamma.coefficients();
  if ((p.size() - 1) % static_cast<std::size_t>(n) != 0) return std::nullopt;
  IntPoly q;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i % static_cast<std::size_t>(n) == 0)
      q.push_back(p[i]);
    else if (p[i] != 0)
      return std::nullopt;
  }
  try {
    return make_beta(q, gamma.options());
  } catch (const Error&) {
    return std::nullopt;
  }
}

int cmd_alpha_nk(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json}, "alpha-nk");
  require_nk(c);
  check_experimental(c, c.opt.k);
  auto a = alpha_nk(c.beta(), c.element(c.opt.alpha), c.opt.n, c.opt.k);
  emit(out, Json{{"n", c.opt.n},
                 {"k", c.opt.k},
                 {"field", polynomial_to_string(a.beta().coefficients())},
                 {"alpha_nk", c.num(a)},
                 {"experimental", c.opt.k >= 2}});
  return kSuccess;
}

int cmd_renorm(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json}, "renorm");
  require_nk(c);
  check_experimental(c, c.opt.k);
  auto a = renorm_down(c.params(), c.opt.n, c.opt.k, true);
  Json base = nullptr, pulled = nullptr;
  if (auto bf = base_field(c.beta(), c.opt.n)) {
    base = polynomial_to_string(bf->coefficients());
    if (auto x = pull_back_power(a, *bf, c.opt.n)) pulled = exact_string(*x);
  }
  emit(out, Json{{"n", c.opt.n},
                 {"k", c.opt.k},
                 {"a", c.num(a)},
                 {"base_field", base},
                 {"a_in_base_field", pulled},
                 {"experimental", c.opt.k >= 2}});
  return kSuccess;
}

int cmd_conjugacy(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json}, "conjugacy-check");
  require_nk(c);
  check_experimental(c, c.opt.k);
  auto rep = verify_conjugacy(c.beta(), c.element(c.opt.alpha), c.opt.n, c.opt.k, c.opt.samples ? c.opt.samples : 16);
  emit(out, Json{{"n", c.opt.n},
                 {"k", c.opt.k},
                 {"samples", rep.samples},
                 {"identity_failures", rep.identity_failures},
                 {"images_disjoint", rep.images_disjoint ? Json(*rep.images_disjoint) : Json(nullptr)},
                 {"ok", rep.ok()},
                 {"experimental", c.opt.k >= 2}});
  return kSuccess;
}

// ---------------------------------------------------------------- measure / numbers

int cmd_density(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json, Format::Csv}, "density");
  auto d = parry_density(c.params(), c.opt.order);
  if (c.cfg.format == Format::Csv) {
    out << "lo,hi,value\n";
    for (std::size_t i = 0; i < d.values.size(); ++i)
      out << c.dec(d.breakpoints[i]) << "," << c.dec(d.breakpoints[i + 1]) << "," << c.dec(d.values[i]) << "\n";
    return kSuccess;
  }
  Json cells = Json::array();
  for (std::size_t i = 0; i < d.values.size(); ++i)
    cells.push_back(Json{{"lo", c.num(d.breakpoints[i])}, {"hi", c.num(d.breakpoints[i + 1])}, {"value", c.num(d.values[i])}});
  emit(out, Json{{"order", d.order}, {"exact", d.exact()}, {"tail_bound", scientific_upper(d.tail_bound)},
                 {"cells", cells}});
  return kSuccess;
}

int cmd_classify_number(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json}, "classify-number");
  const auto& nc = c.beta().number_class();
  Json conj = Json::array();
  for (const auto& b : nc.conjugate_bounds) {
    auto fixed = [](double v) {
      std::ostringstream os;
      os << std::fixed << std::setprecision(6) << (std::abs(v) < 5e-7 ? 0.0 : v);
      return os.str();
    };
    conj.push_back(Json{{"re", fixed(b.re)}, {"im", fixed(b.im)}, {"modulus", c.interval({b.modulus_lo, b.modulus_hi})},
                        {"unit_modulus", b.unit_modulus}});
  }
  emit(out, Json{{"polynomial", polynomial_to_string(c.beta().coefficients())},
                 {"beta", c.num(FieldElement::generator(c.beta()))},
                 {"class", to_string(nc.tag)},
                 {"conjugates", conj},
                 {"diagnostic", nc.diagnostic}});
  return kSuccess;
}

// ---------------------------------------------------------------- reproduce

AlgebraicNumber beta_of(const std::string& poly, const RunConfig& cfg) {
  BetaOptions bo;
  bo.refine_floor_bits = cfg.refine_floor;
  return parse_beta(poly, bo);
}

void expansion_block(std::ostream& os, const std::string& poly, const std::string& alpha, Side side,
                     const RunConfig& cfg) {
  auto beta = beta_of(poly, cfg);
  auto sp = SystemParams::make(beta, parse_field_element(alpha, beta));
  auto r = expansion_of(sp, side, FieldElement::integer(beta, 1), cfg.prefix_len, cfg.orbit_cap);
  os << "expansion of 1 at beta = " << polynomial_to_string(beta.coefficients()) << ", alpha = " << alpha << " ("
     << to_string(side) << ")\n";
  if (!r.word) throw Error(ErrorCode::NotFound, "expansion did not close within the cap");
  os << spaced(*r.word) << "\nvalue " << exact_string(*r.value) << "\n";
}

std::string reproduce_text(const std::string& id, const RunConfig& cfg) {
  std::ostringstream os;
  if (id == "ex-2.2-greedy") {
    expansion_block(os, "z^2-z-1", "0", Side::Plus, cfg);
  } else if (id == "ex-2.2-symmetric") {
    for (auto side : {Side::Plus, Side::Minus}) expansion_block(os, "z^2-z-1", "1-beta/2", side, cfg);
  } else if (id == "ex-2.2-lazy") {
    expansion_block(os, "z^2-z-1", "2-beta", Side::Minus, cfg);
  } else if (id == "ex-2.2-univoque") {
    const std::string poly = "z^14-2z^13+z^11-z^10-z^7+z^6-z^4+z^3-z+1";
    for (const char* a : {"0", "(2-beta)/4", "(2-beta)/2", "3*(2-beta)/4", "2-beta"})
      for (auto side : {Side::Plus, Side::Minus}) expansion_block(os, poly, a, side, cfg);
  } else if (id == "ex-2.4") {
    auto beta = beta_of("z^4-z^2-1", cfg);
    auto pair = kneading_pair(SystemParams::make(beta, parse_field_element("2-beta2", beta)), cfg.orbit_cap,
                              cfg.prefix_len);
    os << "kneading pair at beta = z^4-z^2-1, alpha = 2-beta2\n"
       << "upper " << pair.upper.to_string() << "\nlower " << pair.lower.to_string() << "\nclass "
       << to_string(classify_shift(pair)) << "\n";
  } else if (id == "lemma-2.6") {
    for (int m = 2; m <= 6; ++m) {
      auto beta = beta_of("beta" + std::to_string(m), cfg);
      auto b = FieldElement::generator(beta);
      auto sp = SystemParams::make(beta, (2 - b) * mpq_class(1, 3));
      auto pair = kneading_pair(sp, cfg.orbit_cap, cfg.prefix_len);
      auto up = sp.p, lo = sp.p;
      for (int i = 0; i <= m; ++i) {
        up = step(sp, Side::Plus, up).second;
        lo = step(sp, Side::Minus, lo).second;
      }
      bool equal = up == lo && up == sp.alpha * b.pow(m);
      auto cut = [&](const KneadingWord& w) { return digits_to_string(Digits(w.prefix.begin(), w.prefix.begin() + m + 1)); };
      os << "m=" << m << " alpha=(2-beta" << m << ")/3 upper-prefix " << cut(pair.upper) << " lower-prefix "
         << cut(pair.lower) << " orbit-equality " << (equal ? "true" : "false") << "\n";
    }
  } else if (id == "region-i21") {
    auto gamma = beta_of("z^4-z^2-1", cfg);
    auto g = FieldElement::generator(gamma);
    auto r = interval_Ink(2, 1, gamma);
    auto lo_id = (g * (g + 1)).inverse(), hi_id = 2 - g * g;
    os << "I_{2,1} at beta = z^4-z^2-1\n"
       << "lo " << to_decimal(r.lo, cfg.precision).text << " equals 1/(beta(beta+1)) "
       << (r.lo == lo_id ? "true" : "false") << "\n"
       << "hi " << to_decimal(r.hi, cfg.precision).text << " equals 2-beta^2 " << (r.hi == hi_id ? "true" : "false")
       << "\n";
    auto s2 = beta_of("z^2-2", cfg);
    auto rs = interval_Ink(2, 1, s2);
    auto single = (2 + FieldElement::generator(s2)).inverse();
    os << "I_{2,1} at beta = z^2-2 is the singleton " << to_decimal(rs.lo, cfg.precision).text
       << " equals 1/(2+beta) " << (rs.singleton() && rs.lo == single ? "true" : "false") << "\n";
  } else {
    usage("unknown example id '" + id + "'");
  }
  return os.str();
}

int cmd_reproduce(Context& c, std::ostream& out, std::ostream& err) {
  RunConfig cfg = c.cfg;
  cfg.precision = 12;
  auto text = reproduce_text(c.opt.id, cfg);
  out << text;
  auto path = std::filesystem::path(c.opt.golden_dir) / (c.opt.id + ".txt");
  if (c.opt.update) {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream(path, std::ios::binary) << text;
    err << "wrote " << path.string() << "\n";
    return kSuccess;
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) usage("missing golden file " + path.string());
  std::stringstream golden;
  golden << in.rdbuf();
  if (golden.str() == text) {
    err << "matches " << path.string() << "\n";
    return kSuccess;
  }
  err << "differs from " << path.string() << "\n--- golden\n" << golden.str() << "--- computed\n" << text;
  return kGoldenMismatch;
}

// ---------------------------------------------------------------- sweep

struct SweepItem {
  FieldElement alpha;
  Json json;
  std::vector<std::string> row;
  int code = kSuccess;
};

void sweep_one(Context& c, SweepItem& item, const std::string& task) {
  try {
    auto sp = SystemParams::make(c.beta(), item.alpha);
    if (task == "classify") {
      auto pair = kneading_pair(sp, c.cfg.orbit_cap, c.cfg.prefix_len);
      auto tag = classify_shift(pair);
      item.json = Json{{"class", to_string(tag)}, {"upper", pair.upper.to_string()}, {"lower", pair.lower.to_string()}};
      item.row = {to_string(tag), pair.upper.to_string(), pair.lower.to_string()};
      if (tag == ShiftTag::Unknown) item.code = kCapExhausted;
    } else if (task == "region") {
      auto tr = transitivity(sp, 64, c.cfg.strict);
      item.json = region_json(c, tr);
      item.row = {tr.transitive ? "true" : "false", tr.region ? std::to_string(tr.region->n) : "",
                  tr.region ? std::to_string(tr.region->k) : "", tr.experimental ? "true" : "false"};
    } else {
      SearchOptions so{c.cfg.period_cap, c.cfg.prefix_len};
      auto r = search_sft_alpha(c.beta(), item.alpha, parse_rational(c.opt.eps), so, c.cfg.orbit_cap);
      item.json = Json{{"alpha_prime", c.num(r.alpha_prime)}, {"class", to_string(r.tag)}};
      item.row = {c.dec(r.alpha_prime), to_string(r.tag)};
    }
  } catch (const Error& e) {
    item.code = exit_code(e.code());
    item.json = Json{{"error", to_string(e.code())}};
    std::size_t fields = task == "classify" ? 3 : task == "region" ? 4 : 2;
    item.row.assign(fields, "");
    item.row.push_back(to_string(e.code()));
    return;
  }
  item.row.push_back("");
}

int cmd_sweep(Context& c, std::ostream& out) {
  require_format(c.cfg, {Format::Json, Format::Csv}, "sweep");
  const auto& task = c.opt.task;
  if (task != "classify" && task != "region" && task != "search-sft") usage("--task must be classify, region or search-sft");
  if (task == "search-sft" && c.opt.eps.empty()) usage("--eps is required for search-sft");
  if (c.opt.points < 2) usage("--points must be at least 2");
  auto b = FieldElement::generator(c.beta());
  std::vector<SweepItem> items;
  std::mt19937_64 rng(c.cfg.seed.value_or(0));
  for (std::size_t i = 0; i < c.opt.points; ++i) {
    // The SFT search needs alpha strictly inside (0, 2 - beta).
    bool open = task == "search-sft";
    mpq_class t;
    if (c.cfg.seed)
      t = open ? mpq_class(static_cast<long>(rng() % 9999 + 1), 10000) : mpq_class(static_cast<long>(rng() % 10001), 10000);
    else
      t = open ? mpq_class(static_cast<long>(i + 1), static_cast<long>(c.opt.points + 1))
               : mpq_class(static_cast<long>(i), static_cast<long>(c.opt.points - 1));
    items.push_back({(2 - b) * t, nullptr, {}, kSuccess});
  }
  std::size_t jobs = c.opt.jobs ? c.opt.jobs : std::max(1u, std::min(8u, std::thread::hardware_concurrency()));
  jobs = std::min(jobs, items.size());
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < jobs; ++w)
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < items.size();) sweep_one(c, items[i], task);
    });
  for (auto& t : pool) t.join();

  int code = kSuccess;
  for (const auto& it : items)
    if (code == kSuccess) code = it.code;
  if (c.cfg.format == Format::Csv) {
    if (task == "classify") out << "index,alpha,class,upper,lower,error\n";
    if (task == "region") out << "index,alpha,transitive,n,k,experimental,error\n";
    if (task == "search-sft") out << "index,alpha,alpha_prime,class,error\n";
    for (std::size_t i = 0; i < items.size(); ++i) {
      out << i << "," << c.dec(items[i].alpha);
      for (const auto& f : items[i].row) out << "," << f;
      out << "\n";
    }
    return code;
  }
  Json arr = Json::array();
  for (std::size_t i = 0; i < items.size(); ++i) {
    Json j{{"index", i}, {"alpha", c.num(items[i].alpha)}};
    for (auto& [key, v] : items[i].json.items()) j[key] = v;
    arr.push_back(j);
  }
  emit(out, arr);
  return code;
}

}  // namespace

int exit_code(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Usage:
    case ErrorCode::Parse:
    case ErrorCode::FieldMismatch:
    case ErrorCode::IndexOutOfRange:
      return kUsage;
    case ErrorCode::NotFound:
    case ErrorCode::RefinementCapExceeded:
    case ErrorCode::StateGuardExceeded:
    case ErrorCode::NotSoficInput:
      return kCapExhausted;
    case ErrorCode::ExperimentalRegionHit:
      return kExperimental;
    default:
      return kDomain;
  }
}

std::string default_golden_dir() { return BETAKIT_GOLDEN_DIR; }

const std::vector<std::string>& reproduce_ids() {
  static const std::vector<std::string> ids{"ex-2.2-greedy", "ex-2.2-symmetric", "ex-2.2-lazy", "ex-2.2-univoque",
                                            "ex-2.4",        "lemma-2.6",        "region-i21"};
  return ids;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opt;
  RunConfig cfg;
  std::uint64_t seed = 0;
  CLI::App app{"Exact intermediate beta-transformations", "betakit"};
  app.require_subcommand(1);

  using Handler = std::function<int(Context&)>;
  std::vector<std::pair<CLI::App*, Handler>> handlers;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--format", opt.format, "json, csv or plain");
    sub->add_option("--precision", cfg.precision, "decimal digits")->check(CLI::Range(0, 200));
    sub->add_option("--refine-floor", cfg.refine_floor, "bit budget for root refinement");
    sub->add_flag("--strict", cfg.strict, "treat experimental region hits as errors");
    sub->add_option("--seed", seed, "seed for sampled runs");
  };
  auto system = [&](CLI::App* sub) {
    common(sub);
    sub->add_option("--beta", opt.beta, "defining polynomial, e.g. z^2-z-1");
    sub->add_option("--alpha", opt.alpha, "alpha as a field element");
    sub->add_option("--cap", cfg.orbit_cap, "orbit cap");
    sub->add_option("--prefix-len", cfg.prefix_len, "prefix length for truncated words");
    sub->add_option("--period-cap", cfg.period_cap, "period cap for parameter search");
  };
  auto add = [&](const char* name, const char* help, auto&& setup, Handler h) {
    auto* sub = app.add_subcommand(name, help);
    system(sub);
    setup(sub);
    handlers.emplace_back(sub, std::move(h));
  };
  auto none = [](CLI::App*) {};
  auto side = [&](CLI::App* s) { s->add_option("--side", opt.side, "plus, minus or both"); };
  auto nk = [&](CLI::App* s) {
    s->add_option("--n", opt.n, "renormalization order");
    s->add_option("--k", opt.k, "rotation number numerator");
  };

  add("expand", "beta-expansion of a point", [&](CLI::App* s) {
        side(s);
        s->add_option("--x", opt.x, "point in [0, 1/(beta-1)], default 1");
        s->add_option("--length", opt.length, "prefix length");
      }, [&](Context& c) { return cmd_expand(c, out); });
  add("orbit", "exact orbit of a point of J", [&](CLI::App* s) {
        side(s);
        s->add_option("--x", opt.x, "starting point");
        s->add_option("--show", opt.show, "number of states to print");
      }, [&](Context& c) { return cmd_orbit(c, out); });
  add("kneading", "kneading invariants", none, [&](Context& c) { return cmd_kneading(c, out); });
  add("classify", "SFT / sofic classification", none, [&](Context& c) { return cmd_classify(c, out); });
  add("admissible", "word admissibility", [&](CLI::App* s) {
        side(s);
        s->add_option("--word", opt.word, "finite word or eventually periodic word such as 01(10)");
      }, [&](Context& c) { return cmd_admissible(c, out); });
  add("graph", "presentation of a sofic shift", none, [&](Context& c) { return cmd_graph(c, out); });
  add("entropy", "topological entropy", none, [&](Context& c) { return cmd_entropy(c, out); });
  add("search-sft", "nearby SFT parameter", [&](CLI::App* s) { s->add_option("--eps", opt.eps, "tolerance"); },
      [&](Context& c) { return cmd_search_sft(c, out); });
  add("region", "transitivity region of (beta, alpha)", none, [&](Context& c) { return cmd_region(c, out); });
  add("region-plot", "region boundary curves", [&](CLI::App* s) {
        s->add_option("--n-max", opt.n_max, "largest n");
        s->add_option("--samples", opt.samples, "beta samples per curve");
      }, [&](Context& c) { return cmd_region_plot(c, out); });
  add("alpha-nk", "renormalized parameter over the root field", nk, [&](Context& c) { return cmd_alpha_nk(c, out); });
  add("renorm", "renormalized parameter of the base system", nk, [&](Context& c) { return cmd_renorm(c, out); });
  add("conjugacy-check", "verify the renormalization conjugacy", [&](CLI::App* s) {
        nk(s);
        s->add_option("--samples", opt.samples, "sample points");
      }, [&](Context& c) { return cmd_conjugacy(c, out); });
  add("density", "Parry invariant density", [&](CLI::App* s) { s->add_option("--order", opt.order, "orbit depth"); },
      [&](Context& c) { return cmd_density(c, out); });
  add("classify-number", "Pisot / Salem classification", none,
      [&](Context& c) { return cmd_classify_number(c, out); });
  add("reproduce", "re-run a worked example and diff against golden output", [&](CLI::App* s) {
        s->add_option("id", opt.id, "example id")->required();
        s->add_option("--golden-dir", opt.golden_dir, "golden directory");
        s->add_flag("--update", opt.update, "rewrite the golden file");
      }, [&](Context& c) { return cmd_reproduce(c, out, err); });
  add("sweep", "parallel sweep over an alpha grid", [&](CLI::App* s) {
        s->add_option("--task", opt.task, "classify, region or search-sft");
        s->add_option("--points", opt.points, "grid points");
        s->add_option("--jobs", opt.jobs, "worker threads");
        s->add_option("--eps", opt.eps, "tolerance for search-sft");
      }, [&](Context& c) { return cmd_sweep(c, out); });

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kSuccess : kUsage;
  }

  try {
    cfg.format = parse_format(opt.format);
    for (auto* sub : app.get_subcommands())
      for (const auto* o : sub->get_options())
        if (o->get_name() == "--seed" && o->count()) cfg.seed = seed;
    Context ctx(opt, cfg);
    for (auto& [sub, h] : handlers)
      if (sub->parsed()) return h(ctx);
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kDomain;
  }
}

}  // namespace betakit::cli
