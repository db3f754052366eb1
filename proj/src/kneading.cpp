#include "betakit/kneading.hpp"

#include <mpfr.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numeric>
#include <queue>

namespace betakit {

const char* to_string(ShiftTag t) noexcept {
  switch (t) {
    case ShiftTag::SFT: return "SFT";
    case ShiftTag::SoficNotSFT: return "SoficNotSFT";
    case ShiftTag::Unknown: return "Unknown";
  }
  return "Unknown";
}

KneadingPair kneading_pair(const SystemParams& params, std::size_t cap, std::size_t prefix_length) {
  KneadingPair pair;
  pair.upper = orbit(params, Side::Plus, params.p, cap).kneading_word(prefix_length);
  pair.lower = orbit(params, Side::Minus, params.p, cap).kneading_word(prefix_length);
  return pair;
}

ShiftTag classify_shift(const KneadingPair& pair) {
  if (pair.truncated()) return ShiftTag::Unknown;
  bool sft = pair.upper.exact->shifted().purely_periodic() && pair.lower.exact->shifted().purely_periodic();
  return sft ? ShiftTag::SFT : ShiftTag::SoficNotSFT;
}

namespace {

void require_exact(const KneadingPair& pair) {
  if (pair.truncated())
    throw Error(ErrorCode::NotSoficInput, "kneading invariants are not known to be eventually periodic");
}

}  // namespace

bool admissible(const Digits& prefix, const KneadingPair& pair, Side) {
  require_exact(pair);
  const auto& lower = *pair.lower.exact;
  const auto& upper = *pair.upper.exact;
  for (std::size_t n = 0; n < prefix.size(); ++n) {
    Digits suffix(prefix.begin() + static_cast<long>(n), prefix.end());
    if (lex_compare_prefix(suffix, lower) > 0 && lex_compare_prefix(suffix, upper) < 0) return false;
  }
  return true;
}

namespace {

// Compares every tail sigma^i(word), i < count, with ref. Two eventually
// periodic words agreeing on `horizon` symbols are equal, so a Z-function
// over ref + separator + word yields all comparisons in linear time.
std::vector<int> compare_tails(const EventuallyPeriodicWord& word, std::size_t count,
                               const EventuallyPeriodicWord& ref) {
  const std::size_t horizon = word.preperiod().size() + word.period().size() + ref.preperiod().size() +
                              ref.period().size();
  std::vector<std::uint8_t> s;
  s.reserve(2 * horizon + count + 1);
  for (std::size_t i = 0; i < horizon; ++i) s.push_back(ref.at(i));
  s.push_back(2);
  for (std::size_t i = 0; i < count + horizon; ++i) s.push_back(word.at(i));
  std::vector<std::size_t> z(s.size(), 0);
  for (std::size_t i = 1, l = 0, r = 0; i < s.size(); ++i) {
    if (i < r) z[i] = std::min(r - i, z[i - l]);
    while (i + z[i] < s.size() && s[z[i]] == s[i + z[i]]) ++z[i];
    if (i + z[i] > r) l = i, r = i + z[i];
  }
  std::vector<int> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::size_t lcp = z[horizon + 1 + i];
    out[i] = lcp >= horizon ? 0 : (word.at(i + lcp) < ref.at(lcp) ? -1 : 1);
  }
  return out;
}

}  // namespace

bool admissible(const EventuallyPeriodicWord& word, const KneadingPair& pair, Side side) {
  require_exact(pair);
  const std::size_t n = word.preperiod().size() + word.period().size();
  auto vs_lower = compare_tails(word, n, *pair.lower.exact);
  auto vs_upper = compare_tails(word, n, *pair.upper.exact);
  for (std::size_t i = 0; i < n; ++i) {
    bool ok = side == Side::Plus ? (vs_lower[i] < 0 || vs_upper[i] >= 0) : (vs_lower[i] <= 0 || vs_upper[i] > 0);
    if (!ok) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Follower-set automaton. A state records the smallest live tail of the lower
// invariant (suffixes read so far that agree with a prefix of it) and the
// largest live tail of the upper invariant; -1 means none.

namespace {

struct Tails {
  EventuallyPeriodicWord word;
  std::size_t count;            // distinct tails sigma^0 .. sigma^(count-1)
  std::vector<std::size_t> rank;  // lexicographic rank of each tail
  std::vector<std::uint8_t> first;

  explicit Tails(const EventuallyPeriodicWord& w)
      : word(w), count(w.preperiod().size() + w.period().size()) {
    std::vector<std::size_t> order(count);
    std::iota(order.begin(), order.end(), 0);
    std::vector<EventuallyPeriodicWord> shifted;
    shifted.reserve(count);
    for (std::size_t i = 0; i < count; ++i) shifted.push_back(w.shifted(i));
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return lex_compare(shifted[a], shifted[b]) < 0; });
    rank.assign(count, 0);
    for (std::size_t r = 0; r < count; ++r) rank[order[r]] = r;
    first.resize(count);
    for (std::size_t i = 0; i < count; ++i) first[i] = w.at(i);
  }

  long next(long i) const {
    auto n = static_cast<std::size_t>(i) + 1;
    return static_cast<long>(n < count ? n : word.preperiod().size());
  }
};

}  // namespace

long SubshiftGraph::follow(std::size_t s, int c) const {
  for (const auto& e : edges)
    if (e.from == s && e.label == c) return static_cast<long>(e.to);
  return -1;
}

std::vector<std::vector<long>> SubshiftGraph::adjacency() const {
  std::vector<std::vector<long>> a(states, std::vector<long>(states, 0));
  for (const auto& e : edges) ++a[e.from][e.to];
  return a;
}

SubshiftGraph subshift_graph(const KneadingPair& pair, std::size_t state_guard) {
  require_exact(pair);
  Tails lower(*pair.lower.exact), upper(*pair.upper.exact);
  if ((lower.count + 1) * (upper.count + 1) > state_guard)
    throw Error(ErrorCode::StateGuardExceeded, "tail product exceeds the state guard");

  using State = std::pair<long, long>;
  std::map<State, std::size_t> index;
  std::vector<State> states;
  std::vector<std::array<long, 2>> delta;
  std::queue<std::size_t> work;
  auto intern = [&](State s) {
    auto [it, fresh] = index.emplace(s, states.size());
    if (fresh) {
      if (states.size() >= state_guard) throw Error(ErrorCode::StateGuardExceeded, "automaton exceeds the state guard");
      states.push_back(s);
      delta.push_back({-1, -1});
      work.push(it->second);
    }
    return it->second;
  };
  intern({-1, -1});
  while (!work.empty()) {
    std::size_t id = work.front();
    work.pop();
    auto [a, b] = states[id];
    for (int c = 0; c < 2; ++c) {
      if (a >= 0 && c > lower.first[static_cast<std::size_t>(a)]) continue;
      if (b >= 0 && c < upper.first[static_cast<std::size_t>(b)]) continue;
      long na = (a >= 0 && c == lower.first[static_cast<std::size_t>(a)]) ? lower.next(a) : -1;
      long nb = (b >= 0 && c == upper.first[static_cast<std::size_t>(b)]) ? upper.next(b) : -1;
      if (c == lower.first[0]) {
        long fresh = lower.next(0);
        if (na < 0 || lower.rank[static_cast<std::size_t>(fresh)] < lower.rank[static_cast<std::size_t>(na)]) na = fresh;
      }
      if (c == upper.first[0]) {
        long fresh = upper.next(0);
        if (nb < 0 || upper.rank[static_cast<std::size_t>(fresh)] > upper.rank[static_cast<std::size_t>(nb)]) nb = fresh;
      }
      std::size_t target = intern({na, nb});
      delta[id][static_cast<std::size_t>(c)] = static_cast<long>(target);
    }
  }

  // Moore minimization; a missing edge acts as a transition to a dead state.
  const std::size_t n = states.size();
  std::vector<std::size_t> block(n);
  for (std::size_t i = 0; i < n; ++i) block[i] = (delta[i][0] >= 0 ? 1 : 0) + (delta[i][1] >= 0 ? 2 : 0);
  std::size_t blocks = 0;
  while (true) {
    std::map<std::array<long, 3>, std::size_t> signature;
    std::vector<std::size_t> next(n);
    for (std::size_t i = 0; i < n; ++i) {
      std::array<long, 3> key{static_cast<long>(block[i]),
                              delta[i][0] >= 0 ? static_cast<long>(block[static_cast<std::size_t>(delta[i][0])]) : -1,
                              delta[i][1] >= 0 ? static_cast<long>(block[static_cast<std::size_t>(delta[i][1])]) : -1};
      next[i] = signature.emplace(key, signature.size()).first->second;
    }
    block.swap(next);
    if (signature.size() == blocks) break;
    blocks = signature.size();
  }

  // Renumber blocks in breadth-first order from the initial state.
  std::vector<long> order(blocks, -1);
  std::vector<std::size_t> rep;
  std::queue<std::size_t> bfs;
  order[block[0]] = 0;
  rep.push_back(0);
  bfs.push(0);
  while (!bfs.empty()) {
    std::size_t s = bfs.front();
    bfs.pop();
    for (int c = 0; c < 2; ++c) {
      long t = delta[s][static_cast<std::size_t>(c)];
      if (t < 0) continue;
      auto tb = block[static_cast<std::size_t>(t)];
      if (order[tb] < 0) {
        order[tb] = static_cast<long>(rep.size());
        rep.push_back(static_cast<std::size_t>(t));
        bfs.push(static_cast<std::size_t>(t));
      }
    }
  }

  SubshiftGraph g;
  g.states = rep.size();
  g.initial = 0;
  auto tail_label = [](const Tails& t, long i) {
    return i < 0 ? std::string("-") : t.word.shifted(static_cast<std::size_t>(i)).to_string();
  };
  for (std::size_t k = 0; k < rep.size(); ++k) {
    std::size_t s = rep[k];
    g.state_labels.push_back(tail_label(lower, states[s].first) + "|" + tail_label(upper, states[s].second));
    for (int c = 0; c < 2; ++c) {
      long t = delta[s][static_cast<std::size_t>(c)];
      if (t >= 0)
        g.edges.push_back({k, static_cast<std::size_t>(order[block[static_cast<std::size_t>(t)]]), c});
    }
  }
  return g;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<std::vector<std::size_t>> strongly_connected(std::size_t n, const std::vector<std::vector<std::size_t>>& out) {
  std::vector<std::vector<std::size_t>> in(n);
  for (std::size_t u = 0; u < n; ++u)
    for (auto v : out[u]) in[v].push_back(u);
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> finish;
  for (std::size_t s = 0; s < n; ++s) {
    if (seen[s]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{s, 0}};
    seen[s] = 1;
    while (!stack.empty()) {
      auto& [u, i] = stack.back();
      if (i < out[u].size()) {
        auto v = out[u][i++];
        if (!seen[v]) {
          seen[v] = 1;
          stack.push_back({v, 0});
        }
      } else {
        finish.push_back(u);
        stack.pop_back();
      }
    }
  }
  std::vector<long> comp(n, -1);
  std::vector<std::vector<std::size_t>> comps;
  for (auto it = finish.rbegin(); it != finish.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    comps.emplace_back();
    std::vector<std::size_t> stack{*it};
    comp[*it] = static_cast<long>(comps.size() - 1);
    while (!stack.empty()) {
      auto u = stack.back();
      stack.pop_back();
      comps.back().push_back(u);
      for (auto v : in[u])
        if (comp[v] < 0) {
          comp[v] = comp[*it];
          stack.push_back(v);
        }
    }
  }
  return comps;
}

mpq_class log_rounded(const mpq_class& x, bool upward) {
  mpfr_t v;
  mpfr_init2(v, 160);
  mpfr_rnd_t rnd = upward ? MPFR_RNDU : MPFR_RNDD;
  mpfr_set_q(v, x.get_mpq_t(), rnd);
  mpfr_log(v, v, rnd);
  mpq_class out;
  mpfr_get_q(out.get_mpq_t(), v);
  mpfr_clear(v);
  return out;
}

}  // namespace

EntropyBounds entropy(const SubshiftGraph& graph) {
  const std::size_t n = graph.states;
  std::vector<std::vector<std::size_t>> out(n);
  for (const auto& e : graph.edges) out[e.from].push_back(e.to);
  auto comps = strongly_connected(n, out);

  std::vector<long> comp_of(n, -1);
  for (std::size_t c = 0; c < comps.size(); ++c)
    for (auto u : comps[c]) comp_of[u] = static_cast<long>(c);

  mpq_class best_lo = 0, best_hi = 0;
  bool any = false;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const auto& members = comps[c];
    std::map<std::size_t, std::size_t> local;
    for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = i;
    std::vector<std::vector<std::size_t>> inner(members.size());
    bool has_edge = false;
    for (std::size_t i = 0; i < members.size(); ++i)
      for (auto v : out[members[i]])
        if (comp_of[v] == static_cast<long>(c)) {
          inner[i].push_back(local[v]);
          has_edge = true;
        }
    if (!has_edge) continue;

    const std::size_t m = members.size();
    std::vector<double> v(m, 1.0), w(m);
    for (int iter = 0; iter < 5000; ++iter) {
      for (std::size_t i = 0; i < m; ++i) {
        double s = v[i];
        for (auto j : inner[i]) s += v[j];
        w[i] = s;
      }
      double norm = *std::max_element(w.begin(), w.end());
      double diff = 0;
      for (std::size_t i = 0; i < m; ++i) {
        double nv = w[i] / norm;
        diff = std::max(diff, std::fabs(nv - v[i]));
        v[i] = std::max(nv, 1e-300);
      }
      if (diff < 1e-16 && iter > 50) break;
    }
    // Collatz-Wielandt: min_i (Av)_i/v_i <= rho <= max_i (Av)_i/v_i.
    mpq_class lo, hi;
    for (std::size_t i = 0; i < m; ++i) {
      mpq_class s = 0;
      for (auto j : inner[i]) s += mpq_class(v[j]);
      mpq_class ratio = s / mpq_class(v[i]);
      if (i == 0 || ratio < lo) lo = ratio;
      if (i == 0 || ratio > hi) hi = ratio;
    }
    if (!any || lo > best_lo) best_lo = lo;
    if (!any || hi > best_hi) best_hi = hi;
    any = true;
  }
  EntropyBounds out_bounds;
  if (!any) {
    out_bounds.radius = {0, 0};
    out_bounds.log_radius = {0, 0};
    return out_bounds;
  }
  out_bounds.radius = {best_lo, best_hi};
  out_bounds.log_radius = {log_rounded(best_lo, false), log_rounded(best_hi, true)};
  return out_bounds;
}

}  // namespace betakit
