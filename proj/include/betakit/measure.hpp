#pragma once

// Parry's invariant density for T+(beta, alpha) on [0,1]:
//   h = sum_{n>=0} beta^-n (1_[0, T^n(1)) - 1_[0, T^n(0))),
// kept unnormalized.

#include <optional>
#include <vector>

#include "betakit/regions.hpp"

namespace betakit {

struct DensityApprox {
  /// Sorted, distinct orbit points of 0 and 1 (always containing 0 and 1).
  std::vector<FieldElement> breakpoints;
  /// values[i] is the density on [breakpoints[i], breakpoints[i+1]).
  std::vector<FieldElement> values;
  std::size_t order = 0;
  /// Pointwise bound on |h - values|; zero when both orbits closed.
  mpq_class tail_bound;

  bool exact() const { return tail_bound == 0; }
  /// Rational enclosures of h on each cell, widened by the tail bound.
  std::vector<RationalInterval> enclosures(const mpq_class& width) const;
  /// Density on the cell containing x (x in [0,1); x = 1 reads the last cell).
  const FieldElement& value_at(const FieldElement& x) const;
  /// Integral of the piecewise-constant approximant over [a, b] inside [0,1].
  FieldElement integral(const FieldElement& a, const FieldElement& b) const;
};

/// Orbits of 1 and 0 under T+ to depth order; closed orbits are summed exactly.
DensityApprox parry_density(const SystemParams& params, std::size_t order);

struct InvarianceReport {
  mpq_class max_discrepancy;  // rational upper bound on max_A |nu(T^-1 A) - nu(A)|
  bool exact_zero = false;
  mpq_class bound;            // 2 * tail_bound
  bool within_bound() const { return exact_zero || max_discrepancy <= bound; }
};

/// Compares nu(T^-1 A) with nu(A) over a partition of [0,1] into equal cells.
InvarianceReport check_invariance(const SystemParams& params, std::size_t order, std::size_t cells);

struct SupportResult {
  IntervalSet components;
  bool transitive = true;
  bool experimental = false;
  std::optional<RegionDescriptor> region;
};

/// [0,1] in the transitive and singleton cases, otherwise the closures of
/// T^i(K), i = 1..n, for the renormalization window K = [alpha, beta + alpha - 1].
SupportResult support_components(const SystemParams& params, int n_max = 64, bool strict = false);

}  // namespace betakit
