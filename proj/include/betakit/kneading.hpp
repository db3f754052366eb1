#pragma once

// Kneading invariants tau+(p) (upper) and tau-(p) (lower), the shift-space
// classification they induce, admissibility of words and a finite graph
// presentation of the sofic case.

#include <cstddef>
#include <string>
#include <vector>

#include "betakit/algebraic.hpp"
#include "betakit/dynamics.hpp"
#include "betakit/words.hpp"

namespace betakit {

struct KneadingPair {
  KneadingWord upper;
  KneadingWord lower;

  bool truncated() const { return upper.truncated() || lower.truncated(); }
};

KneadingPair kneading_pair(const SystemParams& params, std::size_t cap, std::size_t prefix_length = 64);

enum class ShiftTag { SFT, SoficNotSFT, Unknown };
const char* to_string(ShiftTag t) noexcept;

ShiftTag classify_shift(const KneadingPair& pair);

/// True when no suffix of the prefix is forced strictly between the lower
/// and upper kneading invariants. Exact pairs only.
bool admissible(const Digits& prefix, const KneadingPair& pair, Side side);

/// Membership of an infinite eventually periodic word in Omega+ or Omega-.
bool admissible(const EventuallyPeriodicWord& word, const KneadingPair& pair, Side side);

struct SubshiftGraph {
  struct Edge {
    std::size_t from;
    std::size_t to;
    int label;
  };
  std::size_t states = 0;
  std::size_t initial = 0;
  std::vector<Edge> edges;
  /// Human-readable label per state: the pair of live kneading tails.
  std::vector<std::string> state_labels;

  std::vector<std::vector<long>> adjacency() const;
  /// Target of the edge labelled c leaving s, or -1.
  long follow(std::size_t s, int c) const;
};

/// Minimal deterministic presentation of the language of Omega. Throws
/// NotSoficInput for truncated pairs and StateGuardExceeded past the guard.
SubshiftGraph subshift_graph(const KneadingPair& pair, std::size_t state_guard = 1000000);

struct EntropyBounds {
  RationalInterval radius;      // spectral radius of the adjacency matrix
  RationalInterval log_radius;  // topological entropy
};

EntropyBounds entropy(const SubshiftGraph& graph);

}  // namespace betakit
