#pragma once

#include <map>
#include <string>
#include <vector>

#include "ladder/common.hpp"
#include "ladder/mj.hpp"
#include "ladder/quasiproduct.hpp"
#include "ladder/semilattice.hpp"

namespace ladder {

/** The inductive quasi-product of a finite well-founded semilattice with a
    finite chain, together with the bookkeeping needed to audit it: the
    processing order, the coverings driving each step, and a relation
    snapshot per step for the restriction checks. */
struct FiniteQuasiProduct {
  QuasiProductCandidate candidate;
  std::vector<int> processing_order;
  std::map<int, std::vector<std::vector<int>>> coverings;  // p -> ideal carriers used
  std::vector<std::vector<bool>> snapshots;                // relation after each step
};

namespace detail {

struct FqpWork {
  const JoinSemilattice* p;
  int len;
  int carrier;
  std::vector<bool> rel;  // carrier x carrier

  int idx(int q, int a) const { return q * len + a; }
  bool leq(int x, int y) const { return rel[static_cast<size_t>(x) * carrier + y]; }
  void set(int x, int y) { rel[static_cast<size_t>(x) * carrier + y] = true; }

  std::vector<int> down_set(int x) const {
    std::vector<int> out;
    for (int z = 0; z < carrier; ++z)
      if (leq(z, x)) out.push_back(z);
    return out;
  }

  /** Least upper bound of two already-related carrier points within the
      domain of the fiber-column of w (all q <= w). The orders below w are
      complete at this point of the induction. */
  int join_below(int w, int x, int y) const {
    int best = -1;
    for (int q = 0; q < p->size(); ++q) {
      if (!p->leq(q, w)) continue;
      for (int a = 0; a < len; ++a) {
        int u = idx(q, a);
        if (!leq(x, u) || !leq(y, u)) continue;
        if (best == -1 || leq(u, best)) best = u;
      }
    }
    if (best == -1)
      fail(Errc::NotWellFormed, "no upper bound inside the domain of " + p->label(w));
    for (int q = 0; q < p->size(); ++q) {
      if (!p->leq(q, w)) continue;
      for (int a = 0; a < len; ++a) {
        int u = idx(q, a);
        if (leq(x, u) && leq(y, u) && !leq(best, u))
          fail(Errc::NotWellFormed, "upper bounds below " + p->label(w) + " have no least");
      }
    }
    return best;
  }
};

}  // namespace detail

/** Runs the fiber-by-fiber induction: minimal elements get plain chains; each
    later element fixes its least finite lower covering, grows the absorption
    sets by the fixpoint rule, and wires its fiber above them. The output is
    validated as a join-semilattice and checked against the quasi-product
    axioms and the per-step restriction property. */
inline FiniteQuasiProduct build_quasi_product_finite(const JoinSemilattice& p, int chain_len,
                                                     const Budget& budget = {}) {
  if (chain_len < 1) fail(Errc::InputError, "chain length must be >= 1");
  int n = p.size();
  int len = chain_len;
  int carrier = n * len;
  detail::FqpWork work{&p, len, carrier, std::vector<bool>(static_cast<size_t>(carrier) * carrier, false)};
  for (int x = 0; x < carrier; ++x) work.set(x, x);

  FiniteQuasiProduct out;

  // linear extension: least unprocessed index with all predecessors done
  std::vector<bool> done(n, false);
  for (int step = 0; step < n; ++step) {
    int pick = -1;
    for (int q = 0; q < n && pick == -1; ++q) {
      if (done[q]) continue;
      bool ready = true;
      for (int z = 0; z < n; ++z)
        if (p.lt(z, q) && !done[z]) ready = false;
      if (ready) pick = q;
    }
    if (pick == -1) fail(Errc::NotWellFormed, "no linear extension found");
    done[pick] = true;
    out.processing_order.push_back(pick);

    // fiber chain
    for (int a = 0; a < len; ++a)
      for (int c = a; c < len; ++c) work.set(work.idx(pick, a), work.idx(pick, c));

    auto covering = least_finite_lower_covering(p, pick, budget);
    int m = static_cast<int>(covering.ideals.size());
    std::vector<std::vector<int>> carriers;
    for (const auto& ideal : covering.ideals) carriers.push_back(ideal.carrier);
    out.coverings[pick] = carriers;

    if (m > 0) {
      // J[i][alpha] as carrier masks, grown alpha by alpha
      std::vector<std::vector<std::vector<bool>>> j(
          m, std::vector<std::vector<bool>>(len, std::vector<bool>(carrier, false)));
      for (int alpha = 0; alpha < len; ++alpha) {
        std::vector<std::vector<bool>> h(m, std::vector<bool>(carrier, false));
        for (int i = 0; i < m; ++i) {
          if (alpha > 0) h[i] = j[i][alpha - 1];
          for (int q : carriers[i])
            for (int z : work.down_set(work.idx(q, alpha))) h[i][z] = true;
        }
        // fixpoint absorption of joins landing inside a covering ideal
        bool grew = true;
        while (grew) {
          grew = false;
          std::vector<int> members;
          for (int z = 0; z < carrier; ++z) {
            bool in_any = false;
            for (int i = 0; i < m; ++i)
              if (h[i][z]) in_any = true;
            if (in_any) members.push_back(z);
          }
          for (size_t a = 0; a < members.size(); ++a)
            for (size_t c = a; c < members.size(); ++c) {
              int z0 = members[a] / len, z1 = members[c] / len;
              int w = p.join(z0, z1);
              for (int i = 0; i < m; ++i) {
                if (std::find(carriers[i].begin(), carriers[i].end(), w) == carriers[i].end())
                  continue;
                int jn = work.join_below(w, members[a], members[c]);
                for (int z : work.down_set(jn))
                  if (!h[i][z]) {
                    h[i][z] = true;
                    grew = true;
                  }
              }
            }
        }
        for (int i = 0; i < m; ++i) j[i][alpha] = h[i];
      }

      // well-formedness of the absorption sets
      for (int i = 0; i < m; ++i) {
        std::vector<bool> all(carrier, false);
        for (int alpha = 0; alpha < len; ++alpha)
          for (int z = 0; z < carrier; ++z)
            if (j[i][alpha][z]) all[z] = true;
        for (int q = 0; q < n; ++q)
          for (int a = 0; a < len; ++a) {
            bool expect = std::find(carriers[i].begin(), carriers[i].end(), q) != carriers[i].end();
            if (all[work.idx(q, a)] != expect)
              fail(Errc::NotWellFormed, "absorption sets do not cover ideal " + std::to_string(i) +
                                            " at " + p.label(pick));
          }
        for (int alpha = 0; alpha < len; ++alpha)
          for (int z = 0; z < carrier; ++z) {
            if (!j[i][alpha][z]) continue;
            for (int y = 0; y < carrier; ++y)
              if (work.leq(y, z) && !j[i][alpha][y])
                fail(Errc::NotWellFormed, "absorption set not downward closed at " + p.label(pick));
          }
      }

      // wire the new fiber above its absorption sets
      for (int alpha = 0; alpha < len; ++alpha)
        for (int i = 0; i < m; ++i)
          for (int z = 0; z < carrier; ++z)
            if (j[i][alpha][z]) work.set(z, work.idx(pick, alpha));
    }
    out.snapshots.push_back(work.rel);
  }

  // package and validate
  std::vector<std::string> labels;
  for (int q = 0; q < n; ++q)
    for (int a = 0; a < len; ++a) labels.push_back("(" + p.label(q) + "," + std::to_string(a) + ")");
  JoinSemilattice order = JoinSemilattice::validate(carrier, work.rel, std::move(labels));

  std::vector<bool> chain_leq(static_cast<size_t>(len) * len, false);
  for (int a = 0; a < len; ++a)
    for (int c = a; c < len; ++c) chain_leq[static_cast<size_t>(a) * len + c] = true;
  JoinSemilattice chain = JoinSemilattice::validate(len, chain_leq);
  out.candidate = QuasiProductCandidate{p, chain, std::move(order)};

  auto verdict = check_quasi_product(out.candidate);
  if (!verdict.ok)
    fail(Errc::NotWellFormed, "output fails quasi-product axiom " + verdict.axiom);
  return out;
}

struct RestrictionReport {
  bool ok = true;
  std::string detail;
};

/** The induction must never disturb finished fibers: the final relation
    restricted to the domain of any processed prefix equals that prefix's
    snapshot, and each domain is an ideal of the final order. */
inline RestrictionReport check_restriction_coherence(const FiniteQuasiProduct& b) {
  const auto& p = b.candidate.x;
  int len = b.candidate.y.size();
  int carrier = p.size() * len;
  for (size_t step = 0; step < b.processing_order.size(); ++step) {
    int q = b.processing_order[step];
    const auto& snap = b.snapshots[step];
    // domain of the order at q: all (z, a) with z <= q
    for (int z0 = 0; z0 < carrier; ++z0)
      for (int z1 = 0; z1 < carrier; ++z1) {
        if (!p.leq(z0 / len, q) || !p.leq(z1 / len, q)) continue;
        bool now = b.candidate.order.leq(z0, z1);
        bool then = snap[static_cast<size_t>(z0) * carrier + z1];
        if (now != then)
          return {false, "relation over dom(" + p.label(q) + ") changed after its step"};
      }
    // the domain is an ideal of the final order
    std::vector<int> dom;
    for (int z = 0; z < carrier; ++z)
      if (p.leq(z / len, q)) dom.push_back(z);
    auto verdict = is_ideal(b.candidate.order, dom);
    if (!verdict.ok) return {false, "dom(" + p.label(q) + ") is not an ideal: " + verdict.reason};
  }
  return {};
}

}  // namespace ladder
