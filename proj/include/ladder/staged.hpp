#pragma once

#include <functional>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "ladder/common.hpp"
#include "ladder/ordinal.hpp"

namespace ladder {

/** A point of a stage-k ladder, flattened: coords[0] is the outermost height,
    coords[k] the innermost chain position. Stage-0 points have one
    coordinate. The enumeration well-order is plain lexicographic comparison,
    which agrees with (height, then recursively the rest). */
struct LadderPoint {
  std::vector<CnfOrdinal> coords;

  friend bool operator==(const LadderPoint& a, const LadderPoint& b) {
    return a.coords == b.coords;
  }
  friend bool operator<(const LadderPoint& a, const LadderPoint& b) {
    return std::lexicographical_compare(a.coords.begin(), a.coords.end(), b.coords.begin(),
                                        b.coords.end());
  }

  std::string to_string() const {
    std::string out;
    for (size_t i = 0; i + 1 < coords.size(); ++i) out += "(" + coords[i].to_string() + ",";
    out += coords.back().to_string();
    out.append(coords.size() - 1, ')');
    return out;
  }
};

/** Stage-k special (semi)ladder fragment. Stage 0 is an ordinal chain; stage
    k+1 is ordinal x stage-k pairs under the order induced by a built rho map.
    The rho evaluator is supplied by the builder that produced this stage; the
    registry records every materialized point so carrier scans stay
    deterministic. */
class StagedLadder {
 public:
  using Value = LadderPoint;
  using RhoFn = std::function<LadderPoint(const CnfOrdinal&, const CnfOrdinal&)>;
  using SupportFn = std::function<std::vector<CnfOrdinal>()>;

  /** Stage 0: the ordinal chain below bound. */
  static std::shared_ptr<StagedLadder> chain(const CnfOrdinal& bound) {
    auto l = std::shared_ptr<StagedLadder>(new StagedLadder());
    l->stage_ = 0;
    l->bound_ = bound;
    l->lattice_ = true;
    return l;
  }

  /** Stage k+1 over a base, with the builder's rho evaluator. */
  static std::shared_ptr<StagedLadder> over(std::shared_ptr<const StagedLadder> base,
                                            const CnfOrdinal& bound, RhoFn rho,
                                            SupportFn rho_support, bool lattice) {
    auto l = std::shared_ptr<StagedLadder>(new StagedLadder());
    l->stage_ = base->stage_ + 1;
    l->bound_ = bound;
    l->base_ = std::move(base);
    l->rho_ = std::move(rho);
    l->rho_support_ = std::move(rho_support);
    l->lattice_ = lattice;
    return l;
  }

  int stage() const { return stage_; }
  const CnfOrdinal& bound() const { return bound_; }
  const StagedLadder* base() const { return base_.get(); }

  LadderPoint bottom() const {
    LadderPoint p;
    p.coords.assign(stage_ + 1, CnfOrdinal::zero(bound_.bound()));
    return p;
  }

  CnfOrdinal ht(const LadderPoint& p) const { return p.coords.front(); }

  LadderPoint cons(const CnfOrdinal& h, const LadderPoint& rest) const {
    LadderPoint p;
    p.coords.reserve(rest.coords.size() + 1);
    p.coords.push_back(h);
    p.coords.insert(p.coords.end(), rest.coords.begin(), rest.coords.end());
    return p;
  }

  LadderPoint rest(const LadderPoint& p) const {
    LadderPoint r;
    r.coords.assign(p.coords.begin() + 1, p.coords.end());
    return r;
  }

  LadderPoint rho(const CnfOrdinal& a, const CnfOrdinal& b) const {
    if (stage_ == 0) fail(Errc::InputError, "stage-0 chains carry no rho");
    return rho_(a, b);
  }

  std::vector<CnfOrdinal> rho_support() const {
    if (stage_ == 0) return {};
    return rho_support_();
  }

  bool leq(const LadderPoint& a, const LadderPoint& b) const {
    if (stage_ == 0) return a.coords[0] <= b.coords[0];
    if (!(a.coords[0] <= b.coords[0])) return false;
    return base_->leq(base_->join(rest(a), rho_(a.coords[0], b.coords[0])), rest(b));
  }

  LadderPoint join(const LadderPoint& a, const LadderPoint& b) const {
    if (stage_ == 0) return a.coords[0] <= b.coords[0] ? b : a;
    const LadderPoint& lo = a.coords[0] <= b.coords[0] ? a : b;
    const LadderPoint& hi = a.coords[0] <= b.coords[0] ? b : a;
    LadderPoint r = base_->join(base_->join(rest(lo), rest(hi)), rho_(lo.coords[0], hi.coords[0]));
    return cons(hi.coords[0], r);
  }

  bool is_lattice_codomain() const { return lattice_; }

  /** Meets via the height-intersection formula; requires the lattice flag
      (set by the ladder-route builder) and the zero row it guarantees. */
  LadderPoint meet(const LadderPoint& a, const LadderPoint& b) const {
    if (!lattice_) fail(Errc::NotALattice, "stage was not built as a lattice");
    if (stage_ == 0) return a.coords[0] <= b.coords[0] ? a : b;
    const LadderPoint& lo = a.coords[0] <= b.coords[0] ? a : b;
    const LadderPoint& hi = a.coords[0] <= b.coords[0] ? b : a;
    if (lo.coords[0] == hi.coords[0]) return cons(lo.coords[0], base_->meet(rest(lo), rest(hi)));
    // best height: max of (D(ht lo, rest lo) u {ht lo}) n D(ht hi, rest hi)
    std::optional<CnfOrdinal> best;
    auto in_d = [&](const CnfOrdinal& eta, const LadderPoint& pt) {
      if (!(eta < pt.coords[0])) return false;
      return base_->leq(rho_(eta, pt.coords[0]), rest(pt));
    };
    auto consider = [&](const CnfOrdinal& eta) {
      bool in_lo = eta == lo.coords[0] || in_d(eta, lo);
      if (in_lo && in_d(eta, hi))
        if (!best || *best < eta) best = eta;
    };
    for (const auto& eta : rho_support_())
      if (eta <= lo.coords[0]) consider(eta);
    if (!best) fail(Errc::NotALattice, "no common height below the pair");
    return cons(*best, base_->meet(rest(lo), rest(hi)));
  }

  /** The immediate successor of p inside its own up-set under the
      enumeration order: bump the innermost coordinate. */
  LadderPoint next_in_upset(const LadderPoint& p) const {
    LadderPoint q = p;
    q.coords.back() = q.coords.back().successor();
    const StagedLadder* inner = this;
    while (inner->base_) inner = inner->base_.get();
    if (!(q.coords.back() < inner->bound_))
      fail(Errc::FragmentExhausted, "innermost chain of the codomain exhausted at " +
                                        inner->bound_.to_string());
    return q;
  }

  /** Enumeration-least fresh point of the up-set of s: the candidates are s
      itself and its innermost bumps, which exhaust the least elements of the
      up-set in enumeration order. */
  LadderPoint fresh_least_in_upset(const LadderPoint& s, const std::set<LadderPoint>& excluded,
                                   int down_floor = 1) const {
    LadderPoint c = s;
    for (;;) {
      if (!excluded.count(c) && down_count_at_least(c, down_floor)) return c;
      c = next_in_upset(c);
    }
  }

  /** Least p above s with ht(p) > h, in enumeration order: raise the height
      coordinate to max(ht(s), h+1) and settle the rest by the join formula. */
  LadderPoint least_above_height(const LadderPoint& s, const CnfOrdinal& h) const {
    CnfOrdinal h0 = s.coords[0] <= h ? h.successor() : s.coords[0];
    if (!(h0 < bound_))
      fail(Errc::FragmentExhausted, "height " + h0.to_string() + " reaches the stage bound " +
                                        bound_.to_string());
    if (h0 == s.coords[0]) return s;
    if (stage_ == 0) {
      LadderPoint p;
      p.coords.push_back(h0);
      return p;
    }
    return cons(h0, base_->join(rest(s), rho_(s.coords[0], h0)));
  }

  LadderPoint point_at_height(const CnfOrdinal& h) const {
    if (!(h < bound_)) fail(Errc::FragmentExhausted, "height beyond the stage bound");
    LadderPoint p = bottom();
    p.coords[0] = h;
    return p;
  }

  /** Materialized down-set counting for the virtualized size floors. Chains
      count exactly; higher stages count over the registry. */
  bool down_count_at_least(const LadderPoint& p, int floor) const {
    if (floor <= 1) return true;
    if (stage_ == 0) {
      auto n = p.coords[0].as_nat();
      if (!n) return true;  // infinite down-set below a limit
      return *n + 1 >= static_cast<std::uint64_t>(floor);
    }
    int count = 1;  // p itself
    std::lock_guard<std::mutex> lock(mu_);
    for (const auto& q : registry_)
      if (!(q == p) && leq(q, p) && ++count >= floor) return true;
    return count >= floor;
  }

  void register_point(const LadderPoint& p) const {
    std::lock_guard<std::mutex> lock(mu_);
    registry_.insert(p);
  }

  /** Materialized carrier points in enumeration order. */
  std::vector<LadderPoint> values() const {
    std::lock_guard<std::mutex> lock(mu_);
    return {registry_.begin(), registry_.end()};
  }

  std::string label(const LadderPoint& p) const { return p.to_string(); }

  /** Seeds the registry with the first n chain points (stage 0 only). */
  void prefill_chain(int n) const {
    if (stage_ != 0) fail(Errc::InputError, "prefill applies to stage-0 chains");
    for (int k = 0; k < n; ++k) {
      CnfOrdinal x = CnfOrdinal::nat(k, bound_.bound());
      if (!(x < bound_)) break;
      LadderPoint p;
      p.coords.push_back(x);
      register_point(p);
    }
  }

 private:
  StagedLadder() = default;

  int stage_ = 0;
  CnfOrdinal bound_;
  std::shared_ptr<const StagedLadder> base_;
  RhoFn rho_;
  SupportFn rho_support_;
  bool lattice_ = false;
  mutable std::set<LadderPoint> registry_;
  mutable std::mutex mu_;
};

}  // namespace ladder
