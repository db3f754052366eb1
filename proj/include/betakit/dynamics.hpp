#pragma once

// Exact iteration of the intermediate beta-transformations
//   T+(x) = beta x + alpha - [x >= p],   T-(x) = beta x + alpha - [x > p]
// on J = [-alpha/(beta-1), (1-alpha)/(beta-1)], with p = (1-alpha)/beta.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "betakit/algebraic.hpp"
#include "betakit/words.hpp"

namespace betakit {

enum class Side { Plus, Minus };
const char* to_string(Side s) noexcept;

struct SystemParams {
  AlgebraicNumber beta;
  FieldElement alpha;
  FieldElement p;
  FieldElement left;
  FieldElement right;

  /// Validates 0 <= alpha <= 2 - beta; throws OutOfDomain otherwise.
  static SystemParams make(const AlgebraicNumber& beta, const FieldElement& alpha);
  bool contains(const FieldElement& x) const;
};

std::pair<int, FieldElement> step(const SystemParams& params, Side side, const FieldElement& x);

Digits expand(const SystemParams& params, Side side, const FieldElement& x, std::size_t length);

/// pi(w) = alpha/(1-beta) + sum w_i beta^-i, summed in closed form.
FieldElement project(const SystemParams& params, const EventuallyPeriodicWord& word);

/// State n represented as (1/D) beta^-d R(beta), R an integer polynomial of
/// degree < d; r holds R's coefficients from beta^(d-1) down to beta^0.
struct RhoVector {
  std::vector<mpz_class> r;
  mpz_class shared_den;
};

struct OrbitStatus {
  bool periodic = false;
  std::size_t preperiod = 0;
  std::size_t period = 0;
  std::size_t cap = 0;
};

class OrbitRecord {
 public:
  const SystemParams& params() const { return params_; }
  Side side() const { return side_; }
  const FieldElement& start() const { return start_; }
  const OrbitStatus& status() const { return status_; }
  const Digits& digits() const { return digits_; }

  /// Number of distinct states recorded.
  std::size_t length() const { return digits_.size(); }
  /// Recorded index of state n, folding n back into the cycle when periodic.
  std::size_t index_of(std::size_t n) const;

  FieldElement state(std::size_t n) const;
  RhoVector rho(std::size_t n) const;
  /// max_k |r_k| over all recorded states.
  mpz_class bound_trace() const;

  /// Exact expansion word when the orbit closed.
  std::optional<EventuallyPeriodicWord> word() const;
  KneadingWord kneading_word(std::size_t prefix_length) const;

 private:
  friend OrbitRecord orbit(const SystemParams&, Side, const FieldElement&, std::size_t);
  template <class Int>
  friend struct OrbitEngine;

  OrbitRecord(SystemParams params, Side side, FieldElement start)
      : params_(std::move(params)), side_(side), start_(std::move(start)) {}

  std::vector<mpz_class> entry(std::size_t i) const;

  SystemParams params_;
  Side side_;
  FieldElement start_;
  OrbitStatus status_;
  Digits digits_;
  mpz_class den_;
  std::size_t dim_ = 0;
  bool wide_ = false;
  std::vector<std::int64_t> narrow_states_;
  std::vector<mpz_class> wide_states_;
};

/// Iterates until the first exact repeat among states 0..cap; the status
/// carries the minimal (preperiod, period) or the cap.
OrbitRecord orbit(const SystemParams& params, Side side, const FieldElement& x, std::size_t cap);

/// Checks the integer polynomial identity linking the first n digits, the
/// starting point and the r-vector of state n, modulo the defining polynomial.
bool verify_rho_identity(const SystemParams& params, Side side, const FieldElement& x, std::size_t n);

struct PreperResult {
  OrbitStatus status;
  mpz_class bound_trace;
};

/// Throws PisotGuaranteeViolated when beta is certified Pisot and the cap is hit.
PreperResult preper_test(const SystemParams& params, Side side, const FieldElement& x, std::size_t cap);

}  // namespace betakit
