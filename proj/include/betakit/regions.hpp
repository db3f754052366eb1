#pragma once

// Non-transitivity regions D_{n,k}: the parameter intervals I_{n,k}(beta),
// the transitivity scan over them, and the renormalization correspondences
// between (beta, alpha) and (beta^{1/n}, alpha_{n,k}).

#include <optional>
#include <utility>
#include <vector>

#include "betakit/dynamics.hpp"

namespace betakit {

struct RegionDescriptor {
  int n = 0;
  int k = 0;
  int s = 0;            // n mod k
  std::vector<long> V;  // V[j-1] = V_j for j = 1..s
  std::vector<long> r;
  std::vector<long> h;
  std::vector<FieldElement> W;
  FieldElement lo;
  FieldElement hi;
  bool experimental = false;  // k >= 2

  bool contains(const FieldElement& alpha) const;
  bool singleton() const { return lo == hi; }
};

/// I_{n,k}(beta). Requires gcd(n,k) = 1, 1 <= k < n and beta^n <= 2.
/// Throws NotCoprime or BetaOutOfRange.
RegionDescriptor interval_Ink(int n, int k, const AlgebraicNumber& beta);

/// Endpoints of I_{n,k} at a rational sample beta, for plotting.
std::pair<mpq_class, mpq_class> interval_Ink_at(int n, int k, const mpq_class& beta);

struct TransitivityResult {
  bool transitive = true;
  std::optional<RegionDescriptor> region;
  bool experimental = false;
};

/// Scans every admissible coprime (n,k) with 2 <= n <= n_max and beta^n <= 2.
/// A hit with k = 1 always wins over an experimental k >= 2 hit; under
/// strict an experimental-only hit throws ExperimentalRegionHit.
TransitivityResult transitivity(const SystemParams& params, int n_max = 64, bool strict = false);

/// Q(beta^{1/n}): the field generated by the root of P(z^n) in (1,2).
AlgebraicNumber root_field(const AlgebraicNumber& beta, int n);

/// Inverse of embed_power when x lies in the image of Q(beta).
std::optional<FieldElement> pull_back_power(const FieldElement& x, const AlgebraicNumber& beta, int n);

/// alpha_{n,k}(beta, alpha) in Q(beta^{1/n}); throws OutOfRegion unless the
/// result lies in I_{n,k}(beta^{1/n}).
FieldElement alpha_nk(const AlgebraicNumber& beta, const FieldElement& alpha, int n, int k);

/// Parameter a in [0, 2 - beta^n] of the renormalized system, for params in
/// D_{n,k}. k >= 2 throws ExperimentalRegionHit unless allow_experimental.
FieldElement renorm_down(const SystemParams& params, int n, int k, bool allow_experimental = false);

/// Finite union of closed intervals, sorted and disjoint.
using IntervalSet = std::vector<std::pair<FieldElement, FieldElement>>;

/// Closure of T(S) for S a union of closed intervals inside [0,1].
IntervalSet image_closure(const SystemParams& params, Side side, const IntervalSet& set);

/// True when the given sets are pairwise disjoint.
bool pairwise_disjoint(const std::vector<IntervalSet>& sets);

struct ConjugacyReport {
  std::size_t samples = 0;
  std::size_t identity_failures = 0;
  std::optional<bool> images_disjoint;  // checked only for interior alpha

  bool ok() const { return identity_failures == 0 && images_disjoint.value_or(true); }
};

/// Checks Phi(T(x)) = S^n(Phi(x)) for T = T+-(beta, alpha), S = T+-(beta^{1/n}, a),
/// Phi(x) = (beta^{1/n} - 1) x + a on exact sample points, and disjointness of
/// the closures S^i(K), i = 1..n, for K = Phi([0,1]).
ConjugacyReport verify_conjugacy(const AlgebraicNumber& beta, const FieldElement& alpha, int n, int k,
                                 std::size_t sample_count);

}  // namespace betakit
