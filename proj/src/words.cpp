#include "betakit/words.hpp"

#include <algorithm>
#include <numeric>

#include "betakit/errors.hpp"

namespace betakit {

namespace {

void check_symbols(const Digits& d) {
  for (auto c : d)
    if (c > 1) throw Error(ErrorCode::Usage, "words are over the alphabet {0,1}");
}

}  // namespace

EventuallyPeriodicWord::EventuallyPeriodicWord(Digits preperiod, Digits period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
  if (per_.empty()) throw Error(ErrorCode::Usage, "period block must be nonempty");
  check_symbols(pre_);
  check_symbols(per_);
  const std::size_t m = per_.size();
  for (std::size_t t = 1; t < m; ++t) {
    if (m % t != 0) continue;
    bool repeats = true;
    for (std::size_t i = t; i < m && repeats; ++i) repeats = per_[i] == per_[i - t];
    if (repeats) {
      per_.resize(t);
      break;
    }
  }
  while (!pre_.empty() && pre_.back() == per_.back()) {
    pre_.pop_back();
    std::rotate(per_.rbegin(), per_.rbegin() + 1, per_.rend());
  }
}

EventuallyPeriodicWord EventuallyPeriodicWord::parse(const std::string& text) {
  auto open = text.find('(');
  auto close = text.find(')');
  if (open == std::string::npos || close == std::string::npos || close != text.size() - 1 || close <= open + 1)
    throw Error(ErrorCode::Parse, "expected a word such as 01(10), got '" + text + "'");
  return {digits_from_string(text.substr(0, open)), digits_from_string(text.substr(open + 1, close - open - 1))};
}

std::uint8_t EventuallyPeriodicWord::at(std::size_t i) const {
  if (i < pre_.size()) return pre_[i];
  return per_[(i - pre_.size()) % per_.size()];
}

Digits EventuallyPeriodicWord::prefix(std::size_t length) const {
  Digits out(length);
  for (std::size_t i = 0; i < length; ++i) out[i] = at(i);
  return out;
}

EventuallyPeriodicWord EventuallyPeriodicWord::shifted(std::size_t n) const {
  if (n <= pre_.size()) return {Digits(pre_.begin() + static_cast<long>(n), pre_.end()), per_};
  std::size_t r = (n - pre_.size()) % per_.size();
  Digits per(per_.begin() + static_cast<long>(r), per_.end());
  per.insert(per.end(), per_.begin(), per_.begin() + static_cast<long>(r));
  return {{}, per};
}

std::string EventuallyPeriodicWord::to_string() const {
  return digits_to_string(pre_) + "(" + digits_to_string(per_) + ")";
}

int lex_compare(const EventuallyPeriodicWord& a, const EventuallyPeriodicWord& b) {
  // Beyond max preperiod + lcm of periods both words repeat in lockstep.
  const std::size_t horizon = std::max(a.preperiod().size(), b.preperiod().size()) +
                              std::lcm(a.period().size(), b.period().size());
  for (std::size_t i = 0; i < horizon; ++i) {
    auto x = a.at(i), y = b.at(i);
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

int lex_compare_prefix(const Digits& finite, const EventuallyPeriodicWord& w) {
  for (std::size_t i = 0; i < finite.size(); ++i) {
    auto y = w.at(i);
    if (finite[i] != y) return finite[i] < y ? -1 : 1;
  }
  return 0;
}

std::string KneadingWord::to_string() const {
  if (exact) return exact->to_string();
  return digits_to_string(prefix) + "...";
}

std::string digits_to_string(const Digits& d) {
  std::string s(d.size(), '0');
  for (std::size_t i = 0; i < d.size(); ++i) s[i] = static_cast<char>('0' + d[i]);
  return s;
}

Digits digits_from_string(const std::string& s) {
  Digits d;
  d.reserve(s.size());
  for (char c : s) {
    if (c == '0' || c == '1')
      d.push_back(static_cast<std::uint8_t>(c - '0'));
    else if (c != ' ' && c != ',')
      throw Error(ErrorCode::Parse, std::string("unexpected symbol '") + c + "' in word");
  }
  return d;
}

}  // namespace betakit
