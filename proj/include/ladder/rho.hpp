#pragma once

#include <algorithm>
#include <bit>
#include <concepts>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "ladder/common.hpp"
#include "ladder/ordinal.hpp"
#include "ladder/semilattice.hpp"

namespace ladder {

/** What a rho codomain must provide: a join-semilattice with least element,
    equality-comparable values, and a materialized value list for carrier
    scans. */
template <class C>
concept CodomainModel = requires(const C& c, const typename C::Value& a,
                                 const typename C::Value& b) {
  { c.bottom() } -> std::convertible_to<typename C::Value>;
  { c.join(a, b) } -> std::convertible_to<typename C::Value>;
  { c.leq(a, b) } -> std::convertible_to<bool>;
  { c.is_lattice_codomain() } -> std::convertible_to<bool>;
  { c.meet(a, b) } -> std::convertible_to<typename C::Value>;
  { c.values() } -> std::convertible_to<std::vector<typename C::Value>>;
  { c.label(a) } -> std::convertible_to<std::string>;
};

/** Finite semilattice as a codomain; requires a least element. */
class FiniteCodomain {
 public:
  using Value = int;

  explicit FiniteCodomain(const JoinSemilattice* b) : b_(b) {
    auto bot = b->bottom();
    if (!bot) fail(Errc::InputError, "rho codomains need a least element");
    bottom_ = *bot;
    lattice_ = is_lattice(*b).ok;
    if (lattice_) {
      int n = b->size();
      meets_.assign(static_cast<size_t>(n) * n, -1);
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          meets_[static_cast<size_t>(x) * n + y] = *ladder::meet(*b, x, y);
    }
  }

  Value bottom() const { return bottom_; }
  Value join(Value a, Value b) const { return b_->join(a, b); }
  bool leq(Value a, Value b) const { return b_->leq(a, b); }
  bool is_lattice_codomain() const { return lattice_; }
  Value meet(Value a, Value b) const {
    if (!lattice_) fail(Errc::NotALattice, "codomain has no meets");
    return meets_[static_cast<size_t>(a) * b_->size() + b];
  }
  std::vector<Value> values() const {
    std::vector<Value> out(b_->size());
    for (int i = 0; i < b_->size(); ++i) out[i] = i;
    return out;
  }
  std::string label(Value v) const { return b_->label(v); }
  const JoinSemilattice& structure() const { return *b_; }

 private:
  const JoinSemilattice* b_;
  int bottom_ = 0;
  bool lattice_ = false;
  std::vector<int> meets_;
};

static_assert(CodomainModel<FiniteCodomain>);

/** A rho map over a finite ordinal interval, stored as a table. The sweep
    machinery enumerates every such map. */
class TableRho {
 public:
  using Cod = FiniteCodomain;
  using Value = int;

  TableRho(const JoinSemilattice* b, int gamma, std::vector<int> table)
      : cod_(b), gamma_(gamma), table_(std::move(table)) {
    if (static_cast<int>(table_.size()) != gamma * gamma)
      fail(Errc::InputError, "table must be gamma x gamma");
    for (int i = 0; i < gamma; ++i) support_.push_back(CnfOrdinal::nat(i));
  }

  const Cod& codomain() const { return cod_; }
  const std::vector<CnfOrdinal>& support() const { return support_; }

  Value at(const CnfOrdinal& a, const CnfOrdinal& b) const {
    auto x = a.as_nat();
    auto y = b.as_nat();
    if (!x || !y || *x >= static_cast<std::uint64_t>(gamma_) ||
        *y >= static_cast<std::uint64_t>(gamma_))
      fail(Errc::InputError, "pair outside the finite domain");
    if (*x == *y) return cod_.bottom();
    auto i = std::min(*x, *y);
    auto j = std::max(*x, *y);
    return table_[i * gamma_ + j];
  }

  int gamma() const { return gamma_; }

 private:
  Cod cod_;
  int gamma_;
  std::vector<int> table_;
  std::vector<CnfOrdinal> support_;
};

template <class R>
concept RhoLike = requires(const R& r, const CnfOrdinal& a) {
  typename R::Cod;
  { r.codomain() };
  { r.support() } -> std::convertible_to<std::vector<CnfOrdinal>>;
  { r.at(a, a) };
};

/** A point of the induced structure: (ordinal, codomain element). */
template <class R>
using InducedPoint = std::pair<CnfOrdinal, typename R::Cod::Value>;

/** The relation induced by rho on ordinal x codomain pairs:
    (a, p) <= (b, q) iff a <= b and p v rho(a, b) <= q. */
template <RhoLike R>
struct InducedOrder {
  const R* rho;

  using Point = InducedPoint<R>;

  bool leq(const Point& x, const Point& y) const {
    if (!(x.first <= y.first)) return false;
    const auto& cod = rho->codomain();
    return cod.leq(cod.join(x.second, rho->at(x.first, y.first)), y.second);
  }

  CnfOrdinal ht(const Point& x) const { return x.first; }
};

struct TriangleVerdict {
  bool ok = true;
  std::array<CnfOrdinal, 3> witness;  // a < b < d
  std::uint64_t triples_checked = 0;
  bool exhaustive = true;
  std::uint64_t seed = 0;
};

namespace detail {

template <RhoLike R, class F>
TriangleVerdict scan_triples(const R& r, F&& violates, std::uint64_t triple_budget,
                             std::uint64_t seed) {
  const auto& s = r.support();
  std::uint64_t n = s.size();
  TriangleVerdict out;
  if (n * n * n <= triple_budget) {
    for (size_t i = 0; i < s.size(); ++i)
      for (size_t j = i + 1; j < s.size(); ++j)
        for (size_t k = j + 1; k < s.size(); ++k) {
          ++out.triples_checked;
          if (violates(s[i], s[j], s[k])) {
            out.ok = false;
            out.witness = {s[i], s[j], s[k]};
            return out;
          }
        }
    return out;
  }
  // deterministic stratified sample on large supports
  out.exhaustive = false;
  out.seed = seed;
  std::mt19937_64 rng(seed);
  for (std::uint64_t t = 0; t < triple_budget; ++t) {
    size_t a = rng() % n, b = rng() % n, c = rng() % n;
    std::array<size_t, 3> idx{a, b, c};
    std::sort(idx.begin(), idx.end());
    if (idx[0] == idx[1] || idx[1] == idx[2]) continue;
    ++out.triples_checked;
    if (violates(s[idx[0]], s[idx[1]], s[idx[2]])) {
      out.ok = false;
      out.witness = {s[idx[0]], s[idx[1]], s[idx[2]]};
      return out;
    }
  }
  return out;
}

}  // namespace detail

/** rho(a, d) <= rho(a, b) v rho(b, d) over the support. */
template <RhoLike R>
TriangleVerdict is_transitive(const R& r, std::uint64_t triple_budget = 2'000'000,
                              std::uint64_t seed = 1) {
  const auto& cod = r.codomain();
  return detail::scan_triples(
      r,
      [&](const CnfOrdinal& a, const CnfOrdinal& b, const CnfOrdinal& d) {
        return !cod.leq(r.at(a, d), cod.join(r.at(a, b), r.at(b, d)));
      },
      triple_budget, seed);
}

/** rho(a, b) <= rho(a, d) v rho(b, d) over the support. */
template <RhoLike R>
TriangleVerdict is_subadditive(const R& r, std::uint64_t triple_budget = 2'000'000,
                               std::uint64_t seed = 1) {
  const auto& cod = r.codomain();
  return detail::scan_triples(
      r,
      [&](const CnfOrdinal& a, const CnfOrdinal& b, const CnfOrdinal& d) {
        return !cod.leq(r.at(a, b), cod.join(r.at(a, d), r.at(b, d)));
      },
      triple_budget, seed);
}

/** D(alpha, p) relative to the materialized support: the eta < alpha with
    rho(eta, alpha) <= p. */
template <RhoLike R>
std::vector<CnfOrdinal> d_set(const R& r, const CnfOrdinal& alpha,
                              const typename R::Cod::Value& p) {
  std::vector<CnfOrdinal> out;
  const auto& cod = r.codomain();
  for (const auto& eta : r.support())
    if (eta < alpha && cod.leq(r.at(eta, alpha), p)) out.push_back(eta);
  return out;
}

/** rho(0, alpha) = bottom for all alpha; cross-checked against (0, bottom)
    sitting below every materialized point. */
template <RhoLike R>
bool has_least(const R& r) {
  const auto& cod = r.codomain();
  CnfOrdinal zero = CnfOrdinal::zero(r.support().empty() ? kDefaultExponentBound
                                                         : r.support().front().bound());
  bool by_rho = true;
  for (const auto& a : r.support())
    if (!(cod.leq(r.at(zero, a), cod.bottom()))) by_rho = false;
  InducedOrder<R> ord{&r};
  bool by_order = true;
  for (const auto& a : r.support())
    for (const auto& p : cod.values())
      if (!ord.leq({zero, cod.bottom()}, {a, p})) by_order = false;
  if (by_rho != by_order) fail(Errc::PropertyViolation, "least-element routes disagree");
  return by_rho;
}

/** Join formula of the induced structure: for a <= b the least upper bound is
    (b, p v q v rho(a, b)). Callers must have established the triangle
    properties for the formula to be the actual join. */
template <RhoLike R>
InducedPoint<R> induced_join(const R& r, InducedPoint<R> x, InducedPoint<R> y) {
  if (y.first < x.first) std::swap(x, y);
  const auto& cod = r.codomain();
  return {y.first, cod.join(cod.join(x.second, y.second), r.at(x.first, y.first))};
}

/** Meet formula: with x = (b, q), y = (d, r), b <= d, the greatest lower
    bound is (a*, q ^ r) where a* = max((D(b, q) u {b}) n D(d, r)). Requires a
    lattice codomain and the zero row; throws NotALattice otherwise. */
template <RhoLike R>
InducedPoint<R> induced_meet(const R& r, InducedPoint<R> x, InducedPoint<R> y) {
  if (y.first < x.first) std::swap(x, y);
  const auto& cod = r.codomain();
  if (!cod.is_lattice_codomain()) fail(Errc::NotALattice, "codomain lacks meets");
  if (x.first == y.first) return {x.first, cod.meet(x.second, y.second)};
  auto db = d_set(r, x.first, x.second);
  db.push_back(x.first);
  auto dd = d_set(r, y.first, y.second);
  std::optional<CnfOrdinal> best;
  for (const auto& e : db)
    if (std::find(dd.begin(), dd.end(), e) != dd.end())
      if (!best || *best < e) best = e;
  if (!best) fail(Errc::NotALattice, "no common height below the pair (zero row missing?)");
  return {*best, cod.meet(x.second, y.second)};
}

/** Materializes the induced order on support x values as an explicit
    semilattice; throws if the relation is not one. */
template <RhoLike R>
JoinSemilattice induced_carrier_semilattice(const R& r) {
  InducedOrder<R> ord{&r};
  using Point = InducedPoint<R>;
  std::vector<Point> pts;
  const auto& cod = r.codomain();
  for (const auto& a : r.support())
    for (const auto& p : cod.values()) pts.push_back({a, p});
  int n = static_cast<int>(pts.size());
  std::vector<bool> leq(static_cast<size_t>(n) * n, false);
  std::vector<std::string> labels;
  for (int i = 0; i < n; ++i)
    labels.push_back("(" + pts[i].first.to_string() + "," + cod.label(pts[i].second) + ")");
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (ord.leq(pts[i], pts[j])) leq[static_cast<size_t>(i) * n + j] = true;
  return JoinSemilattice::validate(n, leq, std::move(labels));
}

enum class RhoClass { not_poset, poset, join_semilattice, lattice };

inline const char* rho_class_name(RhoClass c) {
  switch (c) {
    case RhoClass::not_poset: return "not_poset";
    case RhoClass::poset: return "poset";
    case RhoClass::join_semilattice: return "join_semilattice";
    case RhoClass::lattice: return "lattice";
  }
  return "?";
}

struct DirectOrderReport {
  bool poset = true;
  bool join_total = true;
  bool meet_total = true;
  RhoClass verdict() const {
    if (!poset) return RhoClass::not_poset;
    if (!join_total) return RhoClass::poset;
    if (!meet_total) return RhoClass::join_semilattice;
    return RhoClass::lattice;
  }
};

struct Classification {
  // rho-side criteria
  bool transitive = false;
  bool subadditive = false;
  bool codomain_lattice = false;
  bool zero_row = false;
  bool d_closed = true;
  TriangleVerdict transitivity_detail;
  TriangleVerdict subadditivity_detail;
  RhoClass verdict = RhoClass::not_poset;
  // direct order testing on the materialized carrier
  std::optional<DirectOrderReport> direct;
  bool agree = true;
  // quasi-product axioms on the materialized carrier (when a semilattice)
  std::optional<bool> quasi_product;
};

/** Relative closedness of every D(alpha, p) over the materialized support:
    certified limit points of the set must belong to it. Finite supports of
    successor ordinals are trivially closed. */
template <RhoLike R>
bool d_sets_closed(const R& r, int probe_depth = 8) {
  const auto& cod = r.codomain();
  for (const auto& alpha : r.support()) {
    std::vector<CnfOrdinal> below;
    for (const auto& b : r.support())
      if (b < alpha) below.push_back(b);
    for (const auto& p : cod.values()) {
      auto d = d_set(r, alpha, p);
      for (const auto& lp : limit_points(d, {}, below, probe_depth)) {
        if (std::find(d.begin(), d.end(), lp.beta) == d.end()) return false;
      }
    }
  }
  return true;
}

/** The trichotomy classifier: rho-side criteria decide the class, and when
    the carrier is small enough the direct order tests must agree. */
template <RhoLike R>
Classification classify(const R& r, std::uint64_t direct_carrier_cap = 64,
                        std::uint64_t triple_budget = 2'000'000, std::uint64_t seed = 1) {
  Classification out;
  const auto& cod = r.codomain();
  out.transitivity_detail = is_transitive(r, triple_budget, seed);
  out.subadditivity_detail = is_subadditive(r, triple_budget, seed);
  out.transitive = out.transitivity_detail.ok;
  out.subadditive = out.subadditivity_detail.ok;
  out.codomain_lattice = cod.is_lattice_codomain();
  out.zero_row = true;
  CnfOrdinal zero = CnfOrdinal::zero(r.support().empty() ? kDefaultExponentBound
                                                         : r.support().front().bound());
  for (const auto& a : r.support())
    if (!cod.leq(r.at(zero, a), cod.bottom())) out.zero_row = false;
  out.d_closed = d_sets_closed(r);

  if (!out.transitive)
    out.verdict = RhoClass::not_poset;
  else if (!out.subadditive)
    out.verdict = RhoClass::poset;
  else if (out.codomain_lattice && out.zero_row && out.d_closed)
    out.verdict = RhoClass::lattice;
  else
    out.verdict = RhoClass::join_semilattice;

  auto values = cod.values();
  std::uint64_t carrier = r.support().size() * values.size();
  if (carrier == 0 || carrier > direct_carrier_cap || carrier > 64) return out;

  // materialized carrier scan on uint64 row masks
  using Point = InducedPoint<R>;
  InducedOrder<R> ord{&r};
  std::vector<Point> pts;
  for (const auto& a : r.support())
    for (const auto& p : values) pts.push_back({a, p});
  size_t n = pts.size();
  std::vector<std::uint64_t> ge(n, 0), le(n, 0);  // ge[i]: bits j with i <= j
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (ord.leq(pts[i], pts[j])) {
        ge[i] |= 1ull << j;
        le[j] |= 1ull << i;
      }
  DirectOrderReport direct;
  for (size_t i = 0; i < n && direct.poset; ++i) {
    if (!(ge[i] & (1ull << i))) direct.poset = false;                       // reflexive
    if ((ge[i] & le[i]) != (1ull << i)) direct.poset = false;               // antisymmetric
    for (size_t j = 0; j < n; ++j)
      if ((ge[i] >> j) & 1)
        if (ge[j] & ~ge[i]) {                                               // transitive
          direct.poset = false;
          break;
        }
  }
  auto scan_extreme = [&](const std::vector<std::uint64_t>& rows, std::uint64_t bounds) -> int {
    for (std::uint64_t m = bounds; m; m &= m - 1) {
      int u = std::countr_zero(m);
      if ((bounds & ~rows[u]) == 0) return u;  // u relates to every bound
    }
    return -1;
  };
  if (direct.poset) {
    for (size_t i = 0; i < n && (direct.join_total || direct.meet_total); ++i)
      for (size_t j = i; j < n; ++j) {
        if (direct.join_total && scan_extreme(ge, ge[i] & ge[j]) < 0) direct.join_total = false;
        if (direct.meet_total && scan_extreme(le, le[i] & le[j]) < 0) direct.meet_total = false;
        if (!direct.join_total && !direct.meet_total) break;
      }
  } else {
    direct.join_total = false;
    direct.meet_total = false;
  }
  out.direct = direct;
  out.agree = (direct.verdict() == out.verdict);

  if (direct.poset && direct.join_total) {
    // quasi-product axioms, with the join taken from the independent scan
    bool q1 = true;
    size_t nv = values.size();
    for (size_t a = 0; a < r.support().size() && q1; ++a)
      for (size_t p = 0; p < nv && q1; ++p)
        for (size_t q = 0; q < nv; ++q) {
          size_t i = a * nv + p, j = a * nv + q;
          bool fiber = (ge[i] >> j) & 1;
          if (fiber != cod.leq(values[p], values[q])) {
            q1 = false;
            break;
          }
        }
    bool q2 = true;
    for (size_t i = 0; i < n && q2; ++i)
      for (size_t j = 0; j < n && q2; ++j) {
        int u = scan_extreme(ge, ge[i] & ge[j]);
        CnfOrdinal expected = pts[i].first < pts[j].first ? pts[j].first : pts[i].first;
        if (u < 0 || !(pts[u].first == expected)) q2 = false;
      }
    out.quasi_product = q1 && q2;
  }
  return out;
}

}  // namespace ladder
