#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "ladder/common.hpp"
#include "ladder/semilattice.hpp"

namespace ladder {

/** A join-compatible partition of a semilattice's carrier. Class ids are
    assigned by least member, so representatives ascend with the ids. */
struct Congruence {
  const JoinSemilattice* parent = nullptr;
  std::vector<int> class_of;             // element -> class id
  std::vector<std::vector<int>> blocks;  // class id -> sorted members

  bool related(int x, int y) const { return class_of[x] == class_of[y]; }
};

namespace detail {

inline Congruence partition_to_congruence(const JoinSemilattice& p,
                                          const std::vector<int>& raw_class_of) {
  // renumber classes by least member
  int n = p.size();
  std::vector<int> least(n, -1);
  for (int x = 0; x < n; ++x) {
    int c = raw_class_of[x];
    if (least[c] == -1) least[c] = x;
  }
  std::vector<std::pair<int, int>> order;  // (least member, raw id)
  for (int c = 0; c < n; ++c)
    if (least[c] != -1) order.push_back({least[c], c});
  std::sort(order.begin(), order.end());
  std::vector<int> renumber(n, -1);
  for (size_t i = 0; i < order.size(); ++i) renumber[order[i].second] = static_cast<int>(i);

  Congruence out;
  out.parent = &p;
  out.class_of.resize(n);
  out.blocks.resize(order.size());
  for (int x = 0; x < n; ++x) {
    out.class_of[x] = renumber[raw_class_of[x]];
    out.blocks[out.class_of[x]].push_back(x);
  }
  return out;
}

inline void check_join_compatible(const JoinSemilattice& p, const Congruence& c) {
  int n = p.size();
  for (int x0 = 0; x0 < n; ++x0)
    for (int y0 = 0; y0 < n; ++y0) {
      if (!c.related(x0, y0)) continue;
      for (int x1 = 0; x1 < n; ++x1)
        for (int y1 = 0; y1 < n; ++y1) {
          if (!c.related(x1, y1)) continue;
          if (!c.related(p.join(x0, x1), p.join(y0, y1)))
            fail(Errc::PropertyViolation,
                 "partition is not join compatible at (" + p.label(x0) + "," + p.label(x1) + ")");
        }
    }
}

}  // namespace detail

/** x ~ y when x v z = y v z for some z in the ideal. For an ideal this is
    already an equivalence and a congruence; both facts are checked. */
inline Congruence congruence_from_ideal(const JoinSemilattice& p, const IdealSet& ideal) {
  auto verdict = is_ideal(p, ideal.carrier);
  if (!verdict.ok) fail(Errc::NotAnIdeal, verdict.reason);
  int n = p.size();
  auto related = [&](int x, int y) {
    for (int z : ideal.carrier)
      if (p.join(x, z) == p.join(y, z)) return true;
    return false;
  };
  std::vector<int> cls(n, -1);
  for (int x = 0; x < n; ++x) {
    if (cls[x] != -1) continue;
    cls[x] = x;
    for (int y = x + 1; y < n; ++y)
      if (cls[y] == -1 && related(x, y)) cls[y] = x;
  }
  // an ideal-induced relation is transitive; make sure nothing was split
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (related(x, y) != (cls[x] == cls[y]))
        fail(Errc::PropertyViolation, "ideal relation failed to be an equivalence");
  Congruence out = detail::partition_to_congruence(p, cls);
  detail::check_join_compatible(p, out);
  return out;
}

/** Wraps an explicit partition after verifying join compatibility. Allows
    exercising congruences that no ideal induces. */
inline Congruence congruence_from_partition(const JoinSemilattice& p,
                                            const std::vector<std::vector<int>>& blocks) {
  int n = p.size();
  std::vector<int> cls(n, -1);
  for (size_t b = 0; b < blocks.size(); ++b)
    for (int x : blocks[b]) {
      if (x < 0 || x >= n || cls[x] != -1) fail(Errc::InputError, "blocks must partition 0..n-1");
      cls[x] = static_cast<int>(b);
    }
  for (int x = 0; x < n; ++x)
    if (cls[x] == -1) fail(Errc::InputError, "blocks must partition 0..n-1");
  Congruence out = detail::partition_to_congruence(p, cls);
  detail::check_join_compatible(p, out);
  return out;
}

struct QuotientResult {
  JoinSemilattice quotient;
  std::vector<int> projection;  // element -> quotient element
};

/** Quotient semilattice with [x] v [y] = [x v y]; the projection is a
    surjective join-homomorphism by construction and validated as such. */
inline QuotientResult quotient(const JoinSemilattice& p, const Congruence& c) {
  if (c.parent != &p) fail(Errc::InputError, "congruence belongs to a different structure");
  int k = static_cast<int>(c.blocks.size());
  // [x] <= [y] iff [x] v [y] = [y] iff x v y ~ y
  std::vector<bool> leq(static_cast<size_t>(k) * k, false);
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) {
      int x = c.blocks[a][0];
      int y = c.blocks[b][0];
      leq[static_cast<size_t>(a) * k + b] = c.related(p.join(x, y), y);
    }
  std::vector<std::string> labels;
  for (int a = 0; a < k; ++a) {
    std::string l = "[" + p.label(c.blocks[a][0]) + "]";
    labels.push_back(l);
  }
  QuotientResult out{JoinSemilattice::validate(k, leq, std::move(labels)), c.class_of};
  // projection is a join-homomorphism
  for (int x = 0; x < p.size(); ++x)
    for (int y = 0; y < p.size(); ++y)
      if (out.quotient.join(out.projection[x], out.projection[y]) !=
          out.projection[p.join(x, y)])
        fail(Errc::PropertyViolation, "projection fails to preserve joins");
  return out;
}

}  // namespace ladder
