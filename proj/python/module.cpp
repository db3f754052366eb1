#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <algorithm>
#include <sstream>

#include "betakit/cli.hpp"
#include "betakit/format.hpp"
#include "betakit/kneading.hpp"
#include "betakit/lorenz.hpp"
#include "betakit/measure.hpp"
#include "betakit/parse.hpp"
#include "betakit/regions.hpp"

namespace py = pybind11;
using namespace betakit;

namespace {

Side side_of(const std::string& s) {
  if (s == "plus" || s == "+") return Side::Plus;
  if (s == "minus" || s == "-") return Side::Minus;
  throw Error(ErrorCode::Usage, "side must be 'plus' or 'minus'");
}

double to_double(const mpq_class& q) { return q.get_d(); }

py::dict number(const FieldElement& x, int digits) {
  auto d = to_decimal(x, digits);
  py::dict out;
  out["exact"] = exact_string(x);
  out["decimal"] = d.text;
  out["value"] = approximate(x, mpq_class(1, mpz_class("1000000000000000000000"))).midpoint().get_d();
  return out;
}

py::object word_or_prefix(const KneadingWord& w) {
  if (w.exact) return py::str(w.exact->to_string());
  return py::none();
}

class System {
 public:
  System(const std::string& beta, const std::string& alpha) : params_(make(beta, alpha)) {}

  FieldElement element(const std::string& text) const { return parse_field_element(text, params_.beta); }

  py::dict describe() const {
    py::dict out;
    out["beta"] = number(FieldElement::generator(params_.beta), 15);
    out["polynomial"] = polynomial_to_string(params_.beta.coefficients());
    out["alpha"] = number(params_.alpha, 15);
    out["p"] = number(params_.p, 15);
    out["left"] = number(params_.left, 15);
    out["right"] = number(params_.right, 15);
    return out;
  }

  py::dict expand_point(const std::string& x, const std::string& side, std::size_t length, std::size_t cap) const {
    auto y = element(x) + params_.left;
    if (!params_.contains(y)) throw Error(ErrorCode::OutOfDomain, "x must lie in [0, 1/(beta-1)]");
    auto rec = orbit(params_, side_of(side), y, cap);
    auto w = rec.word();
    py::dict out;
    out["word"] = w ? py::object(py::str(w->to_string())) : py::object(py::none());
    out["prefix"] = w ? digits_to_string(w->prefix(length))
                      : digits_to_string(Digits(rec.digits().begin(),
                                                rec.digits().begin() + static_cast<long>(std::min(length, rec.length()))));
    return out;
  }

  py::dict orbit_of(const std::string& x, const std::string& side, std::size_t cap) const {
    auto rec = orbit(params_, side_of(side), element(x), cap);
    const auto& st = rec.status();
    py::dict out;
    out["periodic"] = st.periodic;
    out["preperiod"] = st.preperiod;
    out["period"] = st.period;
    out["steps"] = rec.length();
    auto w = rec.word();
    out["word"] = w ? py::object(py::str(w->to_string())) : py::object(py::none());
    return out;
  }

  std::pair<py::object, py::object> kneading(std::size_t cap) const {
    auto pair = kneading_pair(params_, cap);
    return {word_or_prefix(pair.upper), word_or_prefix(pair.lower)};
  }

  std::string classify(std::size_t cap) const { return to_string(classify_shift(kneading_pair(params_, cap))); }

  bool is_admissible(const std::string& word, const std::string& side, std::size_t cap) const {
    auto pair = kneading_pair(params_, cap);
    if (word.find('(') != std::string::npos)
      return admissible(EventuallyPeriodicWord::parse(word), pair, side_of(side));
    return admissible(digits_from_string(word), pair, side_of(side));
  }

  py::dict entropy_of(std::size_t cap) const {
    auto graph = subshift_graph(kneading_pair(params_, cap));
    auto e = entropy(graph);
    py::dict out;
    out["states"] = graph.states;
    out["edges"] = graph.edges.size();
    out["radius"] = py::make_tuple(to_double(e.radius.lo), to_double(e.radius.hi));
    out["log_radius"] = py::make_tuple(to_double(e.log_radius.lo), to_double(e.log_radius.hi));
    return out;
  }

  py::dict region(int n_max, bool strict) const {
    auto t = transitivity(params_, n_max, strict);
    py::dict out;
    out["transitive"] = t.transitive;
    out["experimental"] = t.experimental;
    if (t.region) {
      out["n"] = t.region->n;
      out["k"] = t.region->k;
      out["interval"] = py::make_tuple(number(t.region->lo, 15), number(t.region->hi, 15));
    }
    return out;
  }

  std::vector<std::tuple<double, double, double>> density(std::size_t order) const {
    auto d = parry_density(params_, order);
    std::vector<std::tuple<double, double, double>> out;
    mpq_class w(1, mpz_class("1000000000000000000000"));
    for (std::size_t i = 0; i + 1 < d.breakpoints.size(); ++i)
      out.emplace_back(approximate(d.breakpoints[i], w).midpoint().get_d(),
                       approximate(d.breakpoints[i + 1], w).midpoint().get_d(),
                       approximate(d.values[i], w).midpoint().get_d());
    return out;
  }

  std::string search_sft(const std::string& epsilon) const {
    return exact_string(search_sft_alpha(params_.beta, params_.alpha, parse_rational(epsilon)).alpha_prime);
  }

 private:
  static SystemParams make(const std::string& beta, const std::string& alpha) {
    auto b = parse_beta(beta);
    return SystemParams::make(b, parse_field_element(alpha, b));
  }

  SystemParams params_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact arithmetic for intermediate beta-shifts";

  static py::exception<Error> error(m, "BetakitError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error.ptr())(py::str(e.what()));
      exc.attr("code") = to_string(e.code());
      PyErr_SetObject(error.ptr(), exc.ptr());
    }
  });

  m.def(
      "classify_number",
      [](const std::string& beta) { return std::string(to_string(classify(parse_beta(beta)).tag)); },
      py::arg("beta"), "Pisot, Salem, PerronOnly or Other.");
  m.def(
      "beta_value", [](const std::string& beta, int digits) { return to_decimal(FieldElement::generator(parse_beta(beta)), digits).text; },
      py::arg("beta"), py::arg("digits") = 15, "Decimal value of the root in (1, 2).");
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        int code = cli::run(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"), "Runs one command line; returns (exit_code, stdout, stderr).");

  py::class_<System>(m, "System")
      .def(py::init<const std::string&, const std::string&>(), py::arg("beta"), py::arg("alpha") = "0")
      .def("describe", &System::describe)
      .def("expand", &System::expand_point, py::arg("x") = "1", py::arg("side") = "plus", py::arg("length") = 48,
           py::arg("cap") = 1000000, "Expansion of x in [0, 1/(beta-1)]: exact word and leading digits.")
      .def("orbit", &System::orbit_of, py::arg("x"), py::arg("side") = "plus", py::arg("cap") = 1000000)
      .def("kneading", &System::kneading, py::arg("cap") = 1000000,
           "(upper, lower) as eventually periodic words, None where the cap was reached.")
      .def("classify", &System::classify, py::arg("cap") = 1000000)
      .def("admissible", &System::is_admissible, py::arg("word"), py::arg("side") = "plus",
           py::arg("cap") = 1000000)
      .def("entropy", &System::entropy_of, py::arg("cap") = 1000000)
      .def("region", &System::region, py::arg("n_max") = 64, py::arg("strict") = false)
      .def("density", &System::density, py::arg("order") = 1000, "Cells (lo, hi, value) of the invariant density.")
      .def("search_sft", &System::search_sft, py::arg("epsilon") = "1e-4",
           "Nearby alpha' whose shift is of finite type, as an exact string.");
}
