#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ladder/common.hpp"
#include "ladder/poset.hpp"

namespace ladder {

/** Finite join-semilattice: a validated poset together with the total join
    table, precomputed at validation time. */
class JoinSemilattice {
 public:
  /** Derives the join table; throws NoJoin with a witness pair when some
      pair lacks a least upper bound. */
  static JoinSemilattice validate(Poset order) {
    JoinSemilattice s;
    int n = order.size();
    if (n == 0) fail(Errc::InputError, "empty carrier");
    s.join_.assign(static_cast<size_t>(n) * n, -1);
    for (int x = 0; x < n; ++x)
      for (int y = x; y < n; ++y) {
        int best = -1;
        for (int u = 0; u < n; ++u) {
          if (!order.leq(x, u) || !order.leq(y, u)) continue;
          if (best == -1 || order.leq(u, best)) best = u;
        }
        if (best != -1) {
          // best is minimal among upper bounds by the scan; verify leastness
          for (int u = 0; u < n; ++u)
            if (order.leq(x, u) && order.leq(y, u) && !order.leq(best, u)) {
              best = -1;
              break;
            }
        }
        if (best == -1)
          fail(Errc::NoJoin,
               "no least upper bound for (" + order.label(x) + ", " + order.label(y) + ")");
        s.join_[static_cast<size_t>(x) * n + y] = best;
        s.join_[static_cast<size_t>(y) * n + x] = best;
      }
    s.order_ = std::move(order);
    return s;
  }

  static JoinSemilattice validate(int n, const std::vector<bool>& leq,
                                  std::vector<std::string> labels = {}) {
    return validate(Poset::from_leq(n, leq, std::move(labels)));
  }

  const Poset& order() const { return order_; }
  int size() const { return order_.size(); }
  bool leq(int x, int y) const { return order_.leq(x, y); }
  bool lt(int x, int y) const { return order_.lt(x, y); }
  int join(int x, int y) const { return join_[static_cast<size_t>(x) * order_.size() + y]; }
  const std::string& label(int x) const { return order_.label(x); }
  std::optional<int> bottom() const { return order_.bottom(); }
  std::optional<int> top() const { return order_.top(); }
  std::vector<int> lower_covers(int x) const { return order_.lower_covers(x); }

  int join_all(const std::vector<int>& xs) const {
    if (xs.empty()) fail(Errc::InputError, "join of empty set needs a least element");
    int acc = xs[0];
    for (size_t i = 1; i < xs.size(); ++i) acc = join(acc, xs[i]);
    return acc;
  }

 private:
  Poset order_;
  std::vector<int> join_;
};

/** Nonempty, downward closed, join closed subset of a fixed semilattice. */
struct IdealSet {
  const JoinSemilattice* parent = nullptr;
  std::vector<int> carrier;  // sorted

  bool contains(int x) const { return std::binary_search(carrier.begin(), carrier.end(), x); }
};

struct IdealVerdict {
  bool ok = false;
  std::string reason;        // "empty" | "not-downward-closed" | "not-join-closed"
  std::vector<int> witness;  // the violating element or pair
};

inline IdealVerdict is_ideal(const JoinSemilattice& p, const std::vector<int>& subset) {
  std::vector<int> s = subset;
  std::sort(s.begin(), s.end());
  s.erase(std::unique(s.begin(), s.end()), s.end());
  if (s.empty()) return {false, "empty", {}};
  auto in = [&](int x) { return std::binary_search(s.begin(), s.end(), x); };
  for (int x : s)
    for (int y = 0; y < p.size(); ++y)
      if (p.leq(y, x) && !in(y)) return {false, "not-downward-closed", {y, x}};
  for (int x : s)
    for (int y : s)
      if (!in(p.join(x, y))) return {false, "not-join-closed", {x, y}};
  return {true, "", {}};
}

inline IdealSet principal_ideal(const JoinSemilattice& p, int x) {
  if (x < 0 || x >= p.size()) fail(Errc::InputError, "element index out of range");
  IdealSet ideal;
  ideal.parent = &p;
  for (int q = 0; q < p.size(); ++q)
    if (p.leq(q, x)) ideal.carrier.push_back(q);
  return ideal;
}

struct BreadthResult {
  int n = 0;
  std::vector<int> witness;  // lexicographically least irredundant n-subset
};

namespace detail {

// Iterate k-subsets of 0..n-1 in lexicographic order.
template <class F>
bool for_each_subset(int n, int k, F&& f) {
  std::vector<int> idx(k);
  for (int i = 0; i < k; ++i) idx[i] = i;
  if (k > n) return true;
  while (true) {
    if (!f(idx)) return false;
    int i = k - 1;
    while (i >= 0 && idx[i] == n - k + i) --i;
    if (i < 0) return true;
    ++idx[i];
    for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
  }
}

inline bool subset_collapses(const JoinSemilattice& p, const std::vector<int>& xs) {
  // true when some drop-one subset already reaches the full join
  int full = p.join_all(xs);
  for (size_t skip = 0; skip < xs.size(); ++skip) {
    int acc = -1;
    for (size_t i = 0; i < xs.size(); ++i) {
      if (i == skip) continue;
      acc = acc < 0 ? xs[i] : p.join(acc, xs[i]);
    }
    if (acc == full) return true;
  }
  return false;
}

}  // namespace detail

/** Breadth via the (n+1)-subset criterion: least n such that every (n+1)-subset
    collapses to a proper subset with the same join. The witness is the
    lexicographically least n-subset whose join is not reached by any proper
    subset. */
inline BreadthResult breadth(const JoinSemilattice& p, const Budget& budget = {}) {
  int m = p.size();
  if (m > budget.max_subset_scan_elements)
    fail(Errc::SizeGuard, "breadth scan over " + std::to_string(m) + " elements");
  for (int n = 0;; ++n) {
    bool at_most = true;
    if (n == 0) {
      at_most = (m == 1);
    } else {
      detail::for_each_subset(m, n + 1, [&](const std::vector<int>& xs) {
        if (!detail::subset_collapses(p, xs)) {
          at_most = false;
          return false;
        }
        return true;
      });
    }
    if (!at_most) continue;
    BreadthResult res;
    res.n = n;
    if (n > 0) {
      detail::for_each_subset(m, n, [&](const std::vector<int>& xs) {
        if (!detail::subset_collapses(p, xs)) {
          res.witness = xs;
          return false;
        }
        return true;
      });
    }
    return res;
  }
}

struct LatticeVerdict {
  bool ok = true;
  std::pair<int, int> witness{-1, -1};  // pair with no greatest lower bound
};

/** A finite join-semilattice is a lattice iff every pair has a greatest lower
    bound; equivalently, iff it has a least element. */
inline LatticeVerdict is_lattice(const JoinSemilattice& p) {
  int n = p.size();
  for (int x = 0; x < n; ++x)
    for (int y = x + 1; y < n; ++y) {
      std::vector<int> lower;
      for (int z = 0; z < n; ++z)
        if (p.leq(z, x) && p.leq(z, y)) lower.push_back(z);
      if (lower.empty()) return {false, {x, y}};
      // lower is join closed, so its join is the greatest lower bound
      int g = p.join_all(lower);
      if (!p.leq(g, x) || !p.leq(g, y)) return {false, {x, y}};
    }
  return {};
}

/** Greatest lower bound in a finite join-semilattice, when it exists. */
inline std::optional<int> meet(const JoinSemilattice& p, int x, int y) {
  std::vector<int> lower;
  for (int z = 0; z < p.size(); ++z)
    if (p.leq(z, x) && p.leq(z, y)) lower.push_back(z);
  if (lower.empty()) return std::nullopt;
  int g = p.join_all(lower);
  if (!p.leq(g, x) || !p.leq(g, y)) return std::nullopt;
  return g;
}

}  // namespace ladder
