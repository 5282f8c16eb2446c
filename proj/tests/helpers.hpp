#pragma once

// Shared fixtures and independent brute-force oracles for the test suites.
// Everything here stays deliberately naive: oracles must not share logic with
// the library paths they check.

#include <algorithm>
#include <optional>
#include <vector>

#include "ladder/semilattice.hpp"

namespace testutil {

using ladder::JoinSemilattice;
using ladder::Poset;

inline std::vector<bool> empty_leq(int n) {
  std::vector<bool> m(static_cast<size_t>(n) * n, false);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = true;
  return m;
}

inline void set_leq(std::vector<bool>& m, int n, int a, int b) {
  m[static_cast<size_t>(a) * n + b] = true;
}

inline JoinSemilattice chain(int n) {
  auto m = empty_leq(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) set_leq(m, n, i, j);
  return JoinSemilattice::validate(n, m);
}

// bottom=0, atoms 1,2,3, top=4
inline JoinSemilattice m3() {
  int n = 5;
  auto m = empty_leq(n);
  for (int a : {1, 2, 3}) {
    set_leq(m, n, 0, a);
    set_leq(m, n, a, 4);
  }
  set_leq(m, n, 0, 4);
  return JoinSemilattice::validate(n, m, {"bot", "a", "b", "c", "top"});
}

// subsets of {0..k-1} ordered by inclusion; element index = bitmask
inline JoinSemilattice boolean_cube(int k) {
  int n = 1 << k;
  auto m = empty_leq(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((a & b) == a) set_leq(m, n, a, b);
  return JoinSemilattice::validate(n, m);
}

// bottom, two incomparable atoms a, b; no top; a poset but not a semilattice
inline Poset vee_poset() {
  int n = 3;
  auto m = empty_leq(n);
  set_leq(m, n, 0, 1);
  set_leq(m, n, 0, 2);
  return Poset::from_leq(n, m, {"bot", "a", "b"});
}

// two incomparable atoms below a top; no bottom
inline JoinSemilattice vee_top() {
  int n = 3;
  auto m = empty_leq(n);
  set_leq(m, n, 0, 2);
  set_leq(m, n, 1, 2);
  return JoinSemilattice::validate(n, m, {"a", "b", "top"});
}

// Oracle: breadth straight from the subset definition (exponential scan).
inline int breadth_oracle(const JoinSemilattice& p) {
  int m = p.size();
  for (int n = 0;; ++n) {
    bool ok = true;
    for (int mask = 1; mask < (1 << m) && ok; ++mask) {
      std::vector<int> xs;
      for (int i = 0; i < m; ++i)
        if (mask & (1 << i)) xs.push_back(i);
      int full = p.join_all(xs);
      // some subset of size <= n must reach full
      bool reached = false;
      for (int sub = mask;; sub = (sub - 1) & mask) {
        int cnt = __builtin_popcount(static_cast<unsigned>(sub));
        if (cnt <= n) {
          if (sub == 0) {
            if (auto b = p.bottom(); b && *b == full) reached = true;
          } else {
            std::vector<int> ys;
            for (int i = 0; i < m; ++i)
              if (sub & (1 << i)) ys.push_back(i);
            if (p.join_all(ys) == full) reached = true;
          }
        }
        if (reached || sub == 0) break;
      }
      if (!reached) ok = false;
    }
    if (ok) return n;
  }
}

// Oracle: all ideals of p, as sorted carriers.
inline std::vector<std::vector<int>> all_ideals(const JoinSemilattice& p) {
  std::vector<std::vector<int>> out;
  int m = p.size();
  for (int mask = 1; mask < (1 << m); ++mask) {
    std::vector<int> s;
    for (int i = 0; i < m; ++i)
      if (mask & (1 << i)) s.push_back(i);
    if (ladder::is_ideal(p, s).ok) out.push_back(s);
  }
  return out;
}

}  // namespace testutil
