#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ladder/common.hpp"

namespace ladder {

/** Finite partial order on dense indices 0..m-1, stored as an m x m truth
    matrix. Immutable once validated. */
class Poset {
 public:
  /** Validates reflexivity, antisymmetry and transitivity; throws
      NotAPartialOrder naming the failed axiom and a witness. */
  static Poset from_leq(int n, const std::vector<bool>& leq,
                        std::vector<std::string> labels = {}) {
    if (n < 0 || static_cast<int>(leq.size()) != n * n)
      fail(Errc::InputError, "leq matrix must be n*n");
    Poset p;
    p.n_ = n;
    p.leq_ = leq;
    p.labels_ = std::move(labels);
    if (p.labels_.empty()) {
      for (int i = 0; i < n; ++i) p.labels_.push_back(std::to_string(i));
    }
    if (static_cast<int>(p.labels_.size()) != n)
      fail(Errc::InputError, "label count mismatch");
    for (int x = 0; x < n; ++x)
      if (!p.leq(x, x))
        fail(Errc::NotAPartialOrder, "reflexivity fails at " + p.labels_[x]);
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y)
        if (x != y && p.leq(x, y) && p.leq(y, x))
          fail(Errc::NotAPartialOrder,
               "antisymmetry fails at (" + p.labels_[x] + ", " + p.labels_[y] + ")");
    for (int x = 0; x < n; ++x)
      for (int y = 0; y < n; ++y) {
        if (!p.leq(x, y)) continue;
        for (int z = 0; z < n; ++z)
          if (p.leq(y, z) && !p.leq(x, z))
            fail(Errc::NotAPartialOrder, "transitivity fails at (" + p.labels_[x] + ", " +
                                             p.labels_[y] + ", " + p.labels_[z] + ")");
      }
    return p;
  }

  /** Builds the order from cover (or any generating) pairs by reflexive-
      transitive closure, then validates. */
  static Poset from_covers(int n, const std::vector<std::pair<int, int>>& pairs,
                           std::vector<std::string> labels = {}) {
    std::vector<bool> leq(static_cast<size_t>(n) * n, false);
    for (int i = 0; i < n; ++i) leq[static_cast<size_t>(i) * n + i] = true;
    for (auto [a, b] : pairs) {
      if (a < 0 || b < 0 || a >= n || b >= n) fail(Errc::InputError, "pair index out of range");
      leq[static_cast<size_t>(a) * n + b] = true;
    }
    // Floyd–Warshall style closure
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        if (!leq[static_cast<size_t>(i) * n + k]) continue;
        for (int j = 0; j < n; ++j)
          if (leq[static_cast<size_t>(k) * n + j]) leq[static_cast<size_t>(i) * n + j] = true;
      }
    return from_leq(n, leq, std::move(labels));
  }

  int size() const { return n_; }
  bool leq(int x, int y) const { return leq_[static_cast<size_t>(x) * n_ + y]; }
  bool lt(int x, int y) const { return x != y && leq(x, y); }
  const std::string& label(int x) const { return labels_[x]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::vector<int> lower_covers(int x) const {
    std::vector<int> out;
    for (int q = 0; q < n_; ++q) {
      if (!lt(q, x)) continue;
      bool covered = true;
      for (int z = 0; z < n_; ++z)
        if (lt(q, z) && lt(z, x)) {
          covered = false;
          break;
        }
      if (covered) out.push_back(q);
    }
    return out;
  }

  std::vector<int> minimal_elements() const {
    std::vector<int> out;
    for (int x = 0; x < n_; ++x) {
      bool min = true;
      for (int y = 0; y < n_; ++y)
        if (lt(y, x)) {
          min = false;
          break;
        }
      if (min) out.push_back(x);
    }
    return out;
  }

  std::optional<int> bottom() const {
    for (int x = 0; x < n_; ++x) {
      bool below_all = true;
      for (int y = 0; y < n_; ++y)
        if (!leq(x, y)) {
          below_all = false;
          break;
        }
      if (below_all) return x;
    }
    return std::nullopt;
  }

  std::optional<int> top() const {
    for (int x = 0; x < n_; ++x) {
      bool above_all = true;
      for (int y = 0; y < n_; ++y)
        if (!leq(y, x)) {
          above_all = false;
          break;
        }
      if (above_all) return x;
    }
    return std::nullopt;
  }

  /** Longest-chain height of x above the minimal elements. */
  int height(int x) const {
    int best = 0;
    for (int q : lower_covers(x)) best = std::max(best, height(q) + 1);
    return best;
  }

  bool has_upper_bound(const std::vector<int>& subset) const {
    for (int u = 0; u < n_; ++u) {
      bool ok = true;
      for (int s : subset)
        if (!leq(s, u)) {
          ok = false;
          break;
        }
      if (ok) return true;
    }
    return false;
  }

 private:
  int n_ = 0;
  std::vector<bool> leq_;
  std::vector<std::string> labels_;
};

struct DirectedVerdict {
  bool directed = true;
  std::vector<int> witness;  // a subset of size < k with no upper bound
};

/** k-directedness at the poset level: every subset of size < k has an upper
    bound. Finite join-semilattices pass trivially; the poset form exists for
    structures where joins fail. */
inline DirectedVerdict is_directed(const Poset& p, int k, const Budget& budget = {}) {
  if (k < 1) fail(Errc::InputError, "k must be >= 1");
  if (p.size() > budget.max_subset_scan_elements)
    fail(Errc::SizeGuard, "subset scan over " + std::to_string(p.size()) + " elements");
  int n = p.size();
  int cap = std::min(k - 1, n);
  std::vector<int> subset;
  // DFS over subsets of size <= cap
  std::vector<int> stack;
  auto rec = [&](auto&& self, int start) -> std::optional<std::vector<int>> {
    if (!p.has_upper_bound(stack)) return stack;
    if (static_cast<int>(stack.size()) == cap) return std::nullopt;
    for (int x = start; x < n; ++x) {
      stack.push_back(x);
      auto r = self(self, x + 1);
      stack.pop_back();
      if (r) return r;
    }
    return std::nullopt;
  };
  auto w = rec(rec, 0);
  if (w) return {false, *w};
  return {true, {}};
}

}  // namespace ladder
