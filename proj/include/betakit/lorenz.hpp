#pragma once

// Uniform Lorenz maps on [0,1]:
//   U+(x) = beta x + (1 - beta)[x >= q],   U-(x) = beta x + (1 - beta)[x > q],
// conjugate to T+-(beta, alpha) through h(x) = (beta - 1) x + alpha with
// q = 1 + (alpha - 1)/beta.

#include <cstddef>
#include <utility>

#include "betakit/dynamics.hpp"
#include "betakit/kneading.hpp"

namespace betakit {

struct LorenzParams {
  AlgebraicNumber beta;
  FieldElement q;

  /// Requires 1 - 1/beta <= q <= 1/beta.
  static LorenzParams make(const AlgebraicNumber& beta, const FieldElement& q);
};

LorenzParams to_lorenz(const SystemParams& params);
/// Inverse parameter change: alpha = beta (q - 1) + 1.
FieldElement alpha_from_q(const LorenzParams& lp);

/// The conjugating map h(x) = (beta - 1)(x + alpha/(beta - 1)).
FieldElement conjugacy_map(const SystemParams& params, const FieldElement& x);

std::pair<int, FieldElement> lorenz_step(const LorenzParams& lp, Side side, const FieldElement& x);

/// mu+-(q) by exact iteration of U+-; truncated to the first cap digits when
/// the orbit of q does not close.
KneadingWord lorenz_kneading(const LorenzParams& lp, Side side, std::size_t cap);

struct SearchOptions {
  std::size_t period_cap = 64;
  std::size_t prefix_length = 48;
};

/// A parameter q_s within epsilon of q (below q for the minus side, above
/// for the plus side) whose kneading word mu(q_s) is purely periodic.
/// Throws NotFound when no candidate closes within the period cap.
LorenzParams search_periodic_parameter(const LorenzParams& lp, Side side, const mpq_class& epsilon,
                                       const SearchOptions& options = {});

/// Multinacci index m when the defining polynomial is z^m - z^(m-1) - ... - 1, else 0.
int multinacci_index(const AlgebraicNumber& beta);

struct SftSearchResult {
  FieldElement alpha_prime;
  KneadingPair pair;
  ShiftTag tag;
};

/// alpha' with |alpha - alpha'| < epsilon and an SFT shift; beta must be multinacci.
SftSearchResult search_sft_alpha(const AlgebraicNumber& beta, const FieldElement& alpha, const mpq_class& epsilon,
                                 const SearchOptions& options = {}, std::size_t orbit_cap = 1000000);

}  // namespace betakit
