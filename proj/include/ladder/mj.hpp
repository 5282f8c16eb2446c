#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ladder/common.hpp"
#include "ladder/semilattice.hpp"

namespace ladder {

/** The unique join-semilattice with n pairwise-incomparable elements all
    joining to a top: atoms are indices 0..n-1, top is index n. */
inline JoinSemilattice make_mj(int n) {
  if (n < 0) fail(Errc::InputError, "n must be >= 0");
  int m = n + 1;
  std::vector<bool> leq(static_cast<size_t>(m) * m, false);
  std::vector<std::string> labels;
  for (int i = 0; i < m; ++i) leq[static_cast<size_t>(i) * m + i] = true;
  for (int i = 0; i < n; ++i) {
    leq[static_cast<size_t>(i) * m + n] = true;
    labels.push_back(std::to_string(i));
  }
  labels.push_back("1");
  return JoinSemilattice::validate(m, leq, std::move(labels));
}

/** An embedding of the n-atom structure: atoms plus their common top. */
struct MjEmbedding {
  std::vector<int> atoms;  // distinct, pairwise joining to top, none equal to it
  int top = -1;
};

namespace detail {

// DFS for n distinct elements of strictly-below(top) whose pairwise joins all
// equal top. Candidates ascend in index order; the first full tuple wins.
inline bool mj_dfs(const JoinSemilattice& p, int top, int n, int start, std::vector<int>& picked,
                   std::uint64_t& nodes, std::uint64_t node_budget) {
  if (static_cast<int>(picked.size()) == n) return true;
  for (int x = start; x < p.size(); ++x) {
    if (!p.lt(x, top)) continue;
    if (++nodes > node_budget) fail(Errc::SizeGuard, "embedding search budget exhausted");
    bool ok = true;
    for (int y : picked)
      if (p.join(x, y) != top) {
        ok = false;
        break;
      }
    if (!ok) continue;
    picked.push_back(x);
    if (mj_dfs(p, top, n, x + 1, picked, nodes, node_budget)) return true;
    picked.pop_back();
  }
  return false;
}

}  // namespace detail

/** Exhaustive search for a join-embedding of the n-atom structure into p,
    with the top image fixed at x. */
inline std::optional<MjEmbedding> find_mj_embedding_at(const JoinSemilattice& p, int n, int x,
                                                       const Budget& budget = {}) {
  if (n == 0) return MjEmbedding{{}, x};
  std::vector<int> picked;
  std::uint64_t nodes = 0;
  if (detail::mj_dfs(p, x, n, 0, picked, nodes, budget.embedding_nodes))
    return MjEmbedding{picked, x};
  return std::nullopt;
}

/** First embedding under the (top index, then lexicographic atom tuple)
    order, or nothing if p is MJ(n)-free. */
inline std::optional<MjEmbedding> find_mj_embedding(const JoinSemilattice& p, int n,
                                                    const Budget& budget = {}) {
  for (int x = 0; x < p.size(); ++x)
    if (auto e = find_mj_embedding_at(p, n, x, budget)) return e;
  return std::nullopt;
}

namespace detail {

// The implication form of freeness, quantifying over arbitrary tuples:
// if all pairwise joins of x_0..x_{n-1} equal x then some x_i equals x.
// Repetitions force x_i = x automatically, so distinct tuples suffice.
inline bool mj_free_by_implication(const JoinSemilattice& p, int n, const Budget& budget) {
  if (n == 0) return false;  // the empty tuple's top is any element
  for (int x = 0; x < p.size(); ++x)
    if (find_mj_embedding_at(p, n, x, budget)) return false;
  return true;
}

}  // namespace detail

/** MJ(n)-freeness; the embedding search and the displayed-implication check
    must agree, and both are run. */
inline bool is_mj_free(const JoinSemilattice& p, int n, const Budget& budget = {}) {
  bool by_search = !find_mj_embedding(p, n, budget).has_value();
  bool by_implication = detail::mj_free_by_implication(p, n, budget);
  if (by_search != by_implication)
    fail(Errc::PropertyViolation, "freeness routes disagree at n=" + std::to_string(n));
  return by_search;
}

/** Least n such that p is MJ(n)-free. Every nonempty p contains the 0-atom
    structure, so the index is always >= 1. */
inline int least_freeness_index(const JoinSemilattice& p, const Budget& budget = {}) {
  for (int n = 1;; ++n)
    if (is_mj_free(p, n, budget)) return n;
}

/** A set of ideals whose union is exactly the strict down-set of target. */
struct LowerCovering {
  int target = -1;
  std::vector<IdealSet> ideals;
};

inline bool covering_is_exact(const JoinSemilattice& p, const LowerCovering& c) {
  std::vector<bool> covered(p.size(), false);
  for (const IdealSet& ideal : c.ideals)
    for (int y : ideal.carrier) {
      if (!p.lt(y, c.target)) return false;  // spills outside the strict down-set
      covered[y] = true;
    }
  for (int y = 0; y < p.size(); ++y)
    if (p.lt(y, c.target) && !covered[y]) return false;
  return true;
}

/** The covering extracted from a maximum-size embedding with top x: for each
    atom image a, the ideal { y : y v a < x }. For the maximum m this is both
    a lower covering of size m and the inclusion-least finite one. */
inline LowerCovering lower_covering_from_freeness(const JoinSemilattice& p, int x,
                                                  const Budget& budget = {}) {
  int m = 0;
  std::optional<MjEmbedding> best = MjEmbedding{{}, x};
  for (int n = 1; n <= p.size(); ++n) {
    auto e = find_mj_embedding_at(p, n, x, budget);
    if (!e) break;
    m = n;
    best = e;
  }
  LowerCovering out;
  out.target = x;
  for (int k = 0; k < m; ++k) {
    int a = best->atoms[k];
    IdealSet ideal;
    ideal.parent = &p;
    for (int y = 0; y < p.size(); ++y)
      if (p.lt(p.join(y, a), x)) ideal.carrier.push_back(y);
    out.ideals.push_back(std::move(ideal));
  }
  if (!covering_is_exact(p, out))
    fail(Errc::PropertyViolation, "constructed covering is not exact at " + p.label(x));
  return out;
}

/** The unique inclusion-least finite lower covering of x. Minimal finite
    coverings are least, and the freeness construction at the maximal
    embedding size is minimal. */
inline LowerCovering least_finite_lower_covering(const JoinSemilattice& p, int x,
                                                 const Budget& budget = {}) {
  return lower_covering_from_freeness(p, x, budget);
}

struct NLadderVerdict {
  bool ok = true;
  // either a pair with no meet, or an element with too many lower covers
  std::variant<std::monostate, std::pair<int, int>, int> witness;
};

/** n-ladder test: a lattice whose elements have at most n lower covers. When
    p has a least element this must agree with MJ(n+1)-freeness, and the
    agreement is asserted. */
inline NLadderVerdict is_n_ladder(const JoinSemilattice& p, int n, const Budget& budget = {}) {
  NLadderVerdict out;
  auto lat = is_lattice(p);
  if (!lat.ok) {
    out.ok = false;
    out.witness = lat.witness;
  } else {
    for (int x = 0; x < p.size(); ++x)
      if (static_cast<int>(p.lower_covers(x).size()) > n) {
        out.ok = false;
        out.witness = x;
        break;
      }
  }
  if (p.bottom().has_value()) {
    bool free = is_mj_free(p, n + 1, budget);
    if (free != out.ok)
      fail(Errc::PropertyViolation,
           "finite ladder characterization disagrees with freeness at n=" + std::to_string(n));
  }
  return out;
}

}  // namespace ladder
