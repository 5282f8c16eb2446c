#pragma once

// Stock structures used by sweeps, the CLI examples, and tests.

#include "ladder/semilattice.hpp"

namespace ladder::gallery {

inline std::vector<bool> reflexive(int n) {
  std::vector<bool> m(static_cast<size_t>(n) * n, false);
  for (int i = 0; i < n; ++i) m[static_cast<size_t>(i) * n + i] = true;
  return m;
}

inline JoinSemilattice chain(int n) {
  auto m = reflexive(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) m[static_cast<size_t>(i) * n + j] = true;
  return JoinSemilattice::validate(n, m);
}

/** bottom, three pairwise-incomparable atoms, top */
inline JoinSemilattice m3() {
  int n = 5;
  auto m = reflexive(n);
  for (int a : {1, 2, 3}) {
    m[0 * n + a] = true;
    m[static_cast<size_t>(a) * n + 4] = true;
  }
  m[0 * n + 4] = true;
  return JoinSemilattice::validate(n, m, {"bot", "a", "b", "c", "top"});
}

/** subsets of {0..k-1} under inclusion; element index = bitmask */
inline JoinSemilattice boolean_cube(int k) {
  int n = 1 << k;
  auto m = reflexive(n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if ((a & b) == a) m[static_cast<size_t>(a) * n + b] = true;
  return JoinSemilattice::validate(n, m);
}

inline JoinSemilattice diamond() { return boolean_cube(2); }

}  // namespace ladder::gallery
