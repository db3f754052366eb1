#pragma once

// Infinite {0,1}-words that are eventually periodic, stored as a preperiod
// block followed by a repeating block.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace betakit {

using Digits = std::vector<std::uint8_t>;

class EventuallyPeriodicWord {
 public:
  /// Canonicalizes: primitive period, shortest preperiod. Throws Usage when
  /// the period is empty or a symbol is not 0/1.
  EventuallyPeriodicWord(Digits preperiod, Digits period);

  /// Parses "01(10)", "(1001)", "11(0)".
  static EventuallyPeriodicWord parse(const std::string& text);

  const Digits& preperiod() const { return pre_; }
  const Digits& period() const { return per_; }
  bool purely_periodic() const { return pre_.empty(); }

  std::uint8_t at(std::size_t i) const;
  Digits prefix(std::size_t length) const;
  /// sigma^n applied to the word.
  EventuallyPeriodicWord shifted(std::size_t n = 1) const;

  std::string to_string() const;

  bool operator==(const EventuallyPeriodicWord& o) const { return pre_ == o.pre_ && per_ == o.per_; }

 private:
  Digits pre_;
  Digits per_;
};

/// Exact lexicographic comparison: -1, 0 or 1.
int lex_compare(const EventuallyPeriodicWord& a, const EventuallyPeriodicWord& b);

/// Compares a finite word against the prefix of the same length of w.
int lex_compare_prefix(const Digits& finite, const EventuallyPeriodicWord& w);

/// An infinite word that is either known exactly or only through a prefix
/// (when an orbit did not close within its cap).
struct KneadingWord {
  std::optional<EventuallyPeriodicWord> exact;
  Digits prefix;

  bool truncated() const { return !exact.has_value(); }
  std::string to_string() const;
};

std::string digits_to_string(const Digits& d);
Digits digits_from_string(const std::string& s);

}  // namespace betakit
