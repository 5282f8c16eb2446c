#pragma once

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ladder/common.hpp"
#include "ladder/mj.hpp"
#include "ladder/semilattice.hpp"

namespace ladder {

/** A join-semilattice order on the carrier X x Y, indexed row-major:
    (x, y) -> x * |Y| + y. */
struct QuasiProductCandidate {
  JoinSemilattice x;
  JoinSemilattice y;
  JoinSemilattice order;  // carrier size |X| * |Y|

  int pair_index(int xi, int yi) const { return xi * y.size() + yi; }
  int x_of(int idx) const { return idx / y.size(); }
  int y_of(int idx) const { return idx % y.size(); }
};

struct QuasiProductVerdict {
  bool ok = true;
  std::string axiom;           // "q1" or "q2"
  std::pair<int, int> witness{-1, -1};  // carrier indices
};

/** (q1): each fiber map y -> (x, y) is an order-embedding.
    (q2): the projection to X is a join-homomorphism. */
inline QuasiProductVerdict check_quasi_product(const QuasiProductCandidate& c) {
  int nx = c.x.size(), ny = c.y.size();
  if (c.order.size() != nx * ny) fail(Errc::InputError, "carrier is not the full product");
  for (int xi = 0; xi < nx; ++xi)
    for (int y0 = 0; y0 < ny; ++y0)
      for (int y1 = 0; y1 < ny; ++y1) {
        bool fiber = c.order.leq(c.pair_index(xi, y0), c.pair_index(xi, y1));
        if (fiber != c.y.leq(y0, y1))
          return {false, "q1", {c.pair_index(xi, y0), c.pair_index(xi, y1)}};
      }
  for (int a = 0; a < nx * ny; ++a)
    for (int b = 0; b < nx * ny; ++b) {
      int j = c.order.join(a, b);
      if (c.x_of(j) != c.x.join(c.x_of(a), c.x_of(b))) return {false, "q2", {a, b}};
    }
  return {};
}

/** On a valid quasi-product every fiber map preserves joins; exposed so tests
    can falsify it on invalid candidates. */
inline bool check_fx_join_embedding(const QuasiProductCandidate& c, int xi) {
  for (int y0 = 0; y0 < c.y.size(); ++y0)
    for (int y1 = 0; y1 < c.y.size(); ++y1) {
      int j = c.order.join(c.pair_index(xi, y0), c.pair_index(xi, y1));
      if (j != c.pair_index(xi, c.y.join(y0, y1))) return false;
    }
  return true;
}

/** n + m - 1 for the least freeness indices n, m of the factors; the result
    bounds the candidate's own freeness index. */
inline int freeness_degree_bound(const QuasiProductCandidate& c, const Budget& budget = {}) {
  int n = least_freeness_index(c.x, budget);
  int m = least_freeness_index(c.y, budget);
  return n + m - 1;
}

/** Finite carriers cannot descend forever; the check verifies the strict
    order admits a topological ranking over the materialized elements. */
inline bool is_well_founded(const JoinSemilattice& order) {
  int n = order.size();
  std::vector<int> rank(n, -1);
  auto rec = [&](auto&& self, int v) -> int {
    if (rank[v] >= 0) return rank[v];
    int best = 0;
    for (int u = 0; u < n; ++u)
      if (order.lt(u, v)) best = std::max(best, self(self, u) + 1);
    return rank[v] = best;
  };
  for (int v = 0; v < n; ++v) rec(rec, v);
  return true;  // a validated partial order on a finite carrier never cycles
}

inline bool is_well_founded(const QuasiProductCandidate& c) { return is_well_founded(c.order); }

/** The product order itself: always a quasi-product. */
inline QuasiProductCandidate product_order(const JoinSemilattice& x, const JoinSemilattice& y) {
  int nx = x.size(), ny = y.size();
  int n = nx * ny;
  std::vector<bool> leq(static_cast<size_t>(n) * n, false);
  std::vector<std::string> labels;
  for (int a = 0; a < n; ++a) labels.push_back("(" + x.label(a / ny) + "," + y.label(a % ny) + ")");
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (x.leq(a / ny, b / ny) && y.leq(a % ny, b % ny)) leq[static_cast<size_t>(a) * n + b] = true;
  QuasiProductCandidate c{x, y, JoinSemilattice::validate(n, leq, std::move(labels))};
  return c;
}

/** Seed-controlled family of quasi-products beyond the product order: the
    order is strengthened by one sampled cross-fiber relation at a time,
    transitively closed, and revalidated; failures are discarded. */
inline std::vector<QuasiProductCandidate> perturbed_quasi_products(const JoinSemilattice& x,
                                                                   const JoinSemilattice& y,
                                                                   std::uint64_t seed, int count,
                                                                   int attempts = 200) {
  std::mt19937_64 rng(seed);
  std::vector<QuasiProductCandidate> out;
  int nx = x.size(), ny = y.size();
  int n = nx * ny;
  auto base = product_order(x, y);
  std::vector<bool> current(static_cast<size_t>(n) * n, false);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) current[static_cast<size_t>(a) * n + b] = base.order.leq(a, b);
  for (int it = 0; it < attempts && static_cast<int>(out.size()) < count; ++it) {
    int a = static_cast<int>(rng() % n);
    int b = static_cast<int>(rng() % n);
    int xa = a / ny, xb = b / ny;
    if (!(x.lt(xa, xb))) continue;            // keep fibers intact: strictly ascend in X
    if (current[static_cast<size_t>(a) * n + b]) continue;
    auto trial = current;
    trial[static_cast<size_t>(a) * n + b] = true;
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i) {
        if (!trial[static_cast<size_t>(i) * n + k]) continue;
        for (int j = 0; j < n; ++j)
          if (trial[static_cast<size_t>(k) * n + j]) trial[static_cast<size_t>(i) * n + j] = true;
      }
    try {
      QuasiProductCandidate c{x, y, JoinSemilattice::validate(n, trial, base.order.order().labels())};
      if (!check_quasi_product(c).ok) continue;
      current = trial;  // stack further perturbations on top
      out.push_back(std::move(c));
    } catch (const Error&) {
      continue;
    }
  }
  return out;
}

}  // namespace ladder
