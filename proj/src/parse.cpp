#include "betakit/parse.hpp"

#include <cctype>
#include <sstream>

namespace betakit {

namespace {

[[noreturn]] void fail(const std::string& what, const std::string& text) {
  throw Error(ErrorCode::Parse, what + " in '" + text + "'");
}

std::string strip(const std::string& s) {
  std::string out;
  for (char c : s)
    if (!std::isspace(static_cast<unsigned char>(c))) out += c;
  return out;
}

IntPoly multinacci_poly(int m) {
  IntPoly p(static_cast<std::size_t>(m + 1), mpz_class(-1));
  p[static_cast<std::size_t>(m)] = 1;
  return p;
}

// "beta<digits>" -> m, or 0.
int multinacci_name(const std::string& s, std::size_t pos, std::size_t& end) {
  if (s.compare(pos, 4, "beta") != 0) return 0;
  std::size_t i = pos + 4;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  end = i;
  if (i == pos + 4) return 0;
  return std::stoi(s.substr(pos + 4, i - pos - 4));
}

IntPoly parse_int_list(const std::string& s, const std::string& text) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') fail("expected a bracketed list", text);
  IntPoly out;
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) fail("empty list entry", text);
    mpz_class v;
    if (v.set_str(item[0] == '+' ? item.substr(1) : item, 10) != 0) fail("bad integer '" + item + "'", text);
    out.push_back(v);
  }
  if (out.empty()) fail("empty list", text);
  return out;
}

class ExprParser {
 public:
  ExprParser(std::string s, const AlgebraicNumber& beta, std::string original)
      : s_(std::move(s)), beta_(beta), text_(std::move(original)) {}

  FieldElement parse() {
    auto v = expr();
    if (pos_ != s_.size()) fail("unexpected '" + s_.substr(pos_) + "'", text_);
    return v;
  }

 private:
  bool eat(char c) {
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  FieldElement expr() {
    auto v = term();
    for (;;) {
      if (eat('+'))
        v += term();
      else if (eat('-'))
        v -= term();
      else
        return v;
    }
  }

  FieldElement term() {
    auto v = unary();
    for (;;) {
      if (eat('*')) {
        v *= unary();
      } else if (eat('/')) {
        auto d = unary();
        if (d.is_zero()) fail("division by zero", text_);
        v /= d;
      } else {
        return v;
      }
    }
  }

  FieldElement unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    auto v = primary();
    if (eat('^')) {
      std::size_t start = pos_;
      bool neg = eat('-');
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (pos_ == start + (neg ? 1 : 0)) fail("expected an integer exponent", text_);
      v = v.pow(std::stol(s_.substr(start, pos_ - start)));
    }
    return v;
  }

  FieldElement primary() {
    if (pos_ >= s_.size()) fail("unexpected end of input", text_);
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      auto v = expr();
      if (!eat(')')) fail("missing ')'", text_);
      return v;
    }
    if (c == '[') {
      auto close = s_.find(']', pos_);
      if (close == std::string::npos) fail("missing ']'", text_);
      auto coeffs = parse_int_list(s_.substr(pos_, close - pos_ + 1), text_);
      pos_ = close + 1;
      return FieldElement(beta_, std::vector<mpz_class>(coeffs.begin(), coeffs.end()));
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return FieldElement::rational(beta_, parse_rational(s_.substr(start, pos_ - start)));
    }
    std::size_t end = 0;
    if (int m = multinacci_name(s_, pos_, end)) {
      pos_ = end;
      return named_multinacci(m);
    }
    if (s_.compare(pos_, 4, "beta") == 0) {
      pos_ += 4;
      return FieldElement::generator(beta_);
    }
    fail("unexpected '" + std::string(1, c) + "'", text_);
  }

  // beta^n when the defining polynomial is M_m(z^n).
  FieldElement named_multinacci(int m) {
    if (m < 2) fail("multinacci order must be at least 2", text_);
    auto base = multinacci_poly(m);
    int d = beta_.degree();
    if (d % m == 0) {
      int n = d / m;
      if (poly::substitute_power(base, n) == beta_.coefficients()) return FieldElement::generator(beta_).pow(n);
    }
    throw Error(ErrorCode::FieldMismatch,
                "beta" + std::to_string(m) + " is not a power of the generator of the declared field");
  }

  std::string s_;
  const AlgebraicNumber& beta_;
  std::string text_;
  std::size_t pos_ = 0;
};

}  // namespace

mpq_class parse_rational(const std::string& text) {
  auto s = strip(text);
  if (s.empty()) fail("empty number", text);
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    auto num = parse_rational(s.substr(0, slash));
    auto den = parse_rational(s.substr(slash + 1));
    if (den == 0) fail("zero denominator", text);
    return num / den;
  }
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  std::string mant, exp;
  auto e = s.find_first_of("eE", i);
  mant = s.substr(i, e == std::string::npos ? std::string::npos : e - i);
  if (e != std::string::npos) exp = s.substr(e + 1);
  auto dot = mant.find('.');
  std::string digits = mant;
  long scale = 0;
  if (dot != std::string::npos) {
    digits = mant.substr(0, dot) + mant.substr(dot + 1);
    scale = static_cast<long>(mant.size() - dot - 1);
  }
  if (digits.empty()) fail("bad number", text);
  for (char c : digits)
    if (!std::isdigit(static_cast<unsigned char>(c))) fail("bad number", text);
  if (!exp.empty()) {
    std::size_t used = 0;
    long x = 0;
    try {
      x = std::stol(exp, &used);
    } catch (const std::exception&) {
      fail("bad exponent", text);
    }
    if (used != exp.size()) fail("bad exponent", text);
    scale -= x;
  }
  mpq_class v{mpz_class(digits, 10)};
  mpz_class ten = 10, p;
  mpz_pow_ui(p.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale >= 0)
    v /= p;
  else
    v *= p;
  v.canonicalize();
  return neg ? mpq_class(-v) : v;
}

IntPoly parse_polynomial(const std::string& text) {
  auto s = strip(text);
  if (s.empty()) fail("empty polynomial", text);
  if (s.front() == '[') return parse_int_list(s, text);
  std::size_t end = 0;
  if (int m = multinacci_name(s, 0, end); m && end == s.size()) {
    if (m < 2) fail("multinacci order must be at least 2", text);
    return multinacci_poly(m);
  }

  IntPoly out;
  std::size_t i = 0;
  while (i < s.size()) {
    int sign = 1;
    if (s[i] == '+' || s[i] == '-') {
      sign = s[i] == '-' ? -1 : 1;
      ++i;
    } else if (i != 0) {
      fail("expected '+' or '-'", text);
    }
    std::size_t start = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    mpz_class coeff = i > start ? mpz_class(s.substr(start, i - start), 10) : mpz_class(1);
    long power = 0;
    if (i < s.size() && s[i] == '*') ++i;
    if (i < s.size() && (s[i] == 'z' || s[i] == 'x')) {
      ++i;
      power = 1;
      if (i < s.size() && s[i] == '^') ++i;
      std::size_t ps = i;
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
      if (i > ps) power = std::stol(s.substr(ps, i - ps));
    } else if (i == start) {
      fail("expected a term", text);
    }
    if (static_cast<long>(out.size()) <= power) out.resize(static_cast<std::size_t>(power + 1), 0);
    out[static_cast<std::size_t>(power)] += sign * coeff;
  }
  return out;
}

AlgebraicNumber parse_beta(const std::string& text, BetaOptions options) {
  return make_beta(parse_polynomial(text), options);
}

FieldElement parse_field_element(const std::string& text, const AlgebraicNumber& beta) {
  auto s = strip(text);
  if (s.empty()) fail("empty expression", text);
  return ExprParser(s, beta, text).parse();
}

std::string polynomial_to_string(const IntPoly& p) {
  std::ostringstream os;
  bool first = true;
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    const auto& c = p[static_cast<std::size_t>(i)];
    if (c == 0) continue;
    mpz_class a = abs(c);
    if (c < 0)
      os << "-";
    else if (!first)
      os << "+";
    if (a != 1 || i == 0) os << a.get_str();
    if (i >= 1) os << "z";
    if (i >= 2) os << "^" << i;
    first = false;
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace betakit
