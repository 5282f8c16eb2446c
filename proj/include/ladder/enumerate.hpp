#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ladder/common.hpp"
#include "ladder/semilattice.hpp"

namespace ladder {

namespace detail {

/** Canonical encoding of an order matrix: the minimum bit string over all
    relabelings. Quadratic in n! but n stays <= 7 here. */
inline std::vector<bool> canonical_matrix(int n, const std::vector<bool>& leq) {
  std::vector<int> perm(n);
  for (int i = 0; i < n; ++i) perm[i] = i;
  std::vector<bool> best;
  do {
    std::vector<bool> relabeled(static_cast<size_t>(n) * n, false);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (leq[static_cast<size_t>(i) * n + j])
          relabeled[static_cast<size_t>(perm[i]) * n + perm[j]] = true;
    if (best.empty() || relabeled < best) best = relabeled;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace detail

/** Every join-semilattice on exactly n labeled points, deduplicated up to
    isomorphism. Candidates are generated as the transitive reflexive orders
    compatible with the natural labeling; every isomorphism class contains
    such a representative. */
inline std::vector<JoinSemilattice> all_join_semilattices(int n, const Budget& budget = {}) {
  if (n < 1) fail(Errc::InputError, "n must be >= 1");
  if (n > 7) fail(Errc::SizeGuard, "enumeration beyond 7 points");
  (void)budget;
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) slots.push_back({i, j});
  std::set<std::vector<bool>> seen;
  std::vector<JoinSemilattice> out;
  for (std::uint64_t mask = 0; mask < (1ull << slots.size()); ++mask) {
    std::vector<bool> leq(static_cast<size_t>(n) * n, false);
    for (int i = 0; i < n; ++i) leq[static_cast<size_t>(i) * n + i] = true;
    for (size_t s = 0; s < slots.size(); ++s)
      if (mask & (1ull << s)) leq[static_cast<size_t>(slots[s].first) * n + slots[s].second] = true;
    // transitivity (antisymmetry holds by upper-triangular construction)
    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i)
      for (int j = i + 1; j < n && transitive; ++j) {
        if (!leq[static_cast<size_t>(i) * n + j]) continue;
        for (int k = j + 1; k < n; ++k)
          if (leq[static_cast<size_t>(j) * n + k] && !leq[static_cast<size_t>(i) * n + k]) {
            transitive = false;
            break;
          }
      }
    if (!transitive) continue;
    // join totality
    bool total = true;
    for (int x = 0; x < n && total; ++x)
      for (int y = x + 1; y < n && total; ++y) {
        int least = -1;
        for (int u = 0; u < n; ++u) {
          if (!leq[static_cast<size_t>(x) * n + u] || !leq[static_cast<size_t>(y) * n + u])
            continue;
          if (least == -1 || leq[static_cast<size_t>(u) * n + least]) least = u;
        }
        if (least == -1) {
          total = false;
          break;
        }
        for (int u = 0; u < n; ++u)
          if (leq[static_cast<size_t>(x) * n + u] && leq[static_cast<size_t>(y) * n + u] &&
              !leq[static_cast<size_t>(least) * n + u])
            total = false;
      }
    if (!total) continue;
    auto canon = detail::canonical_matrix(n, leq);
    if (seen.insert(canon).second) out.push_back(JoinSemilattice::validate(n, canon));
  }
  return out;
}

inline std::vector<JoinSemilattice> all_join_semilattices_up_to(int n,
                                                                const Budget& budget = {}) {
  std::vector<JoinSemilattice> out;
  for (int k = 1; k <= n; ++k) {
    auto part = all_join_semilattices(k, budget);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

/** All ideals of a small semilattice, sorted carriers. */
inline std::vector<std::vector<int>> enumerate_ideals(const JoinSemilattice& p,
                                                      const Budget& budget = {}) {
  int m = p.size();
  if (m > budget.max_subset_scan_elements || m > 20)
    fail(Errc::SizeGuard, "ideal enumeration over " + std::to_string(m) + " elements");
  std::vector<std::vector<int>> out;
  for (int mask = 1; mask < (1 << m); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) s.push_back(i);
    if (is_ideal(p, s).ok) out.push_back(std::move(s));
  }
  return out;
}

/** Least size of a lower covering of x among antichain families of at most
    cap ideals, or cap+1 when none exists. Independent of the freeness route:
    this is the brute-force side of the equivalence. */
inline int min_lower_covering_size(const JoinSemilattice& p, int x,
                                   const std::vector<std::vector<int>>& ideals, int cap) {
  std::vector<int> want;
  for (int y = 0; y < p.size(); ++y)
    if (p.lt(y, x)) want.push_back(y);
  if (want.empty()) return 0;
  // only ideals inside the strict down-set can participate
  std::vector<const std::vector<int>*> usable;
  for (const auto& c : ideals) {
    bool inside = true;
    for (int y : c)
      if (!p.lt(y, x)) inside = false;
    if (inside) usable.push_back(&c);
  }
  int best = cap + 1;
  std::vector<const std::vector<int>*> pick;
  auto rec = [&](auto&& self, size_t start) -> void {
    if (static_cast<int>(pick.size()) >= best) return;
    std::vector<int> got;
    for (auto* c : pick)
      for (int y : *c) got.push_back(y);
    std::sort(got.begin(), got.end());
    got.erase(std::unique(got.begin(), got.end()), got.end());
    if (got == want) {
      best = static_cast<int>(pick.size());
      return;
    }
    if (static_cast<int>(pick.size()) == cap) return;
    for (size_t i = start; i < usable.size(); ++i) {
      bool redundant = false;
      for (auto* c : pick) {
        if (std::includes(c->begin(), c->end(), usable[i]->begin(), usable[i]->end()) ||
            std::includes(usable[i]->begin(), usable[i]->end(), c->begin(), c->end()))
          redundant = true;
      }
      if (redundant) continue;
      pick.push_back(usable[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return best;
}

}  // namespace ladder
