#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "ladder/common.hpp"
#include "ladder/mj.hpp"
#include "ladder/ordinal.hpp"
#include "ladder/quasiproduct.hpp"
#include "ladder/rho.hpp"
#include "ladder/semilattice.hpp"
#include "ladder/squares.hpp"
#include "ladder/staged.hpp"

namespace ladder {

enum class BuildRoute { semiladder, ladder };

inline const char* route_name(BuildRoute r) {
  return r == BuildRoute::semiladder ? "semiladder" : "ladder";
}

struct BuildConfig {
  BuildRoute route = BuildRoute::semiladder;
  CnfOrdinal bound;  // rho lives on pairs below this
  std::uint64_t seed = 1;
  int probe_depth = 8;
};

/** The per-limit bookkeeping of the recursion: which case fired, the chosen
    upper bound (Case 1), and the materialized p-vector with case labels. */
struct IndexRecord {
  std::string case_label;  // "i" | "ii" | "ii-seq" | "iii" | "iv"
  LadderPoint value;
  CnfOrdinal theta;
};

struct GammaRecord {
  std::string case_label;  // "copy" | "case1" | "case2"
  std::vector<CnfOrdinal> case1_seq;
  std::optional<LadderPoint> case1_p;
  std::optional<ClubSet> club;
  std::map<CnfOrdinal, IndexRecord> pvec;
  std::map<CnfOrdinal, CnfOrdinal> mu_served;  // alpha -> index
};

/** Memoized recursive evaluator for the square-driven rho constructions.
    Choices that the proofs leave to a well-order are made canonically: the
    enumeration order of the codomain decides, and freshness exclusions use
    the recursion's own canonical index cone, which keeps values independent
    of request order and coherent across related limits. */
class RhoBuilder : public std::enable_shared_from_this<RhoBuilder> {
 public:
  RhoBuilder(BuildConfig cfg, std::shared_ptr<const StagedLadder> base, CSequenceSystem squares)
      : cfg_(std::move(cfg)), base_(std::move(base)), squares_(std::move(squares)) {
    if (!(cfg_.bound <= squares_.bound()))
      fail(Errc::InputError, "build bound exceeds the square system's universe");
    zero_ = CnfOrdinal::zero(cfg_.bound.bound());
  }

  const BuildConfig& config() const { return cfg_; }
  const StagedLadder& codomain() const { return *base_; }
  const CSequenceSystem& squares() const { return squares_; }
  const std::map<CnfOrdinal, GammaRecord>& gammas() const { return gammas_; }
  const std::map<std::pair<CnfOrdinal, CnfOrdinal>, LadderPoint>& memo() const { return memo_; }

  void set_requests(std::vector<std::pair<CnfOrdinal, CnfOrdinal>> r) {
    requests_ = std::move(r);
  }
  const std::vector<std::pair<CnfOrdinal, CnfOrdinal>>& requests() const { return requests_; }

  std::vector<CnfOrdinal> support_sorted() const {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    return std::vector<CnfOrdinal>(support_.begin(), support_.end());
  }

  /** Evaluation is memoized and internally synchronized, so concurrent
      verifier reads are safe; values never depend on call order. */
  LadderPoint rho(const CnfOrdinal& a, const CnfOrdinal& b) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    if (a == b) return base_->bottom();
    if (b < a) return rho(b, a);
    auto key = std::make_pair(a, b);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    if (!(b <= cfg_.bound))
      fail(Errc::InputError, "pair (" + a.to_string() + "," + b.to_string() +
                                 ") beyond the build bound " + cfg_.bound.to_string());
    support_.insert(a);
    support_.insert(b);
    LadderPoint val;
    GammaRecord& g = gammas_[b];
    if (b.is_successor()) {
      CnfOrdinal prev = b.predecessor();
      g.case_label = "case1";
      g.case1_seq = {prev};
      g.case1_p = base_->bottom();
      val = rho(a, prev);
    } else {
      CofInfo ci = squares_.cof_class(b);
      if (ci.cls == CofClass::small) {
        if (cfg_.route == BuildRoute::ladder)
          fail(Errc::InputError, "ladder route requires the large class at every limit");
        g.case_label = "case1";
        auto seq = squares_.small_seq(b);
        if (!seq)
          fail(Errc::UncertifiedLimit,
               "no cofinal sequence supplied for small-class " + b.to_string());
        g.case1_seq = *seq;
        if (!g.case1_p) {
          LadderPoint s = base_->bottom();
          for (size_t i = 0; i < seq->size(); ++i)
            for (size_t j = i; j < seq->size(); ++j)
              s = base_->join(s, rho((*seq)[i], (*seq)[j]));
          LadderPoint p = base_->fresh_least_in_upset(s, {}, ci.floor);
          base_->register_point(p);
          g.case1_p = p;
        }
        if (a.is_zero()) {
          val = base_->bottom();  // set directly, as the construction demands
        } else {
          std::optional<size_t> idx;
          for (size_t i = 0; i < seq->size(); ++i)
            if (a <= (*seq)[i]) {
              idx = i;
              break;
            }
          if (!idx)
            fail(Errc::UncertifiedLimit, "supplied sequence for " + b.to_string() +
                                             " is not cofinal past " + a.to_string());
          val = base_->join(*gammas_[b].case1_p, rho(a, (*seq)[*idx]));
        }
      } else {
        g.case_label = "case2";
        ensure_club(b);
        LimitFrame frame{b, *gammas_[b].club};
        CnfOrdinal mu = frame.mu(a);
        CnfOrdinal theta_mu = frame.theta(mu);
        LadderPoint pm = p_at(b, mu);
        gammas_[b].mu_served[a] = mu;
        val = base_->join(pm, rho(a, theta_mu));
      }
    }
    if (a.is_zero() && !(val == base_->bottom()))
      fail(Errc::NotWellFormed, "zero row violated at " + b.to_string());
    base_->register_point(val);
    memo_[key] = val;
    return val;
  }

  /** The p-vector entry of a large-class limit at a given index,
      materialized with canonical dependencies. */
  LadderPoint p_at(const CnfOrdinal& gamma, const CnfOrdinal& nu) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    GammaRecord& g = gammas_[gamma];
    if (auto it = g.pvec.find(nu); it != g.pvec.end()) return it->second.value;
    ensure_club(gamma);
    LimitFrame frame{gamma, *g.club};
    IndexRecord rec;
    rec.theta = frame.theta(nu);
    if (nu.is_zero()) {
      rec.case_label = "i";
      rec.value = base_->bottom();
    } else if (nu.is_successor()) {
      CnfOrdinal prev_idx = nu.predecessor();
      LadderPoint prev = p_at(gamma, prev_idx);
      CnfOrdinal theta_prev = frame.theta(prev_idx);
      LadderPoint s = base_->join(prev, rho(theta_prev, rec.theta));
      rec.case_label = "ii";
      if (cfg_.route == BuildRoute::ladder) {
        rec.value = base_->least_above_height(s, base_->ht(prev));
      } else {
        rec.value = base_->fresh_least_in_upset(s, cone_values(gamma, nu));
      }
    } else {
      // limit index
      if (cfg_.route == BuildRoute::semiladder) {
        CofInfo ci = squares_.cof_class(nu);
        auto seq = squares_.small_seq(nu);
        if (ci.cls == CofClass::small && seq) {
          LadderPoint s = base_->bottom();
          for (const auto& iota : *seq) {
            LadderPoint term = base_->join(p_at(gamma, iota), rho(frame.theta(iota), rec.theta));
            s = base_->join(s, term);
          }
          rec.case_label = "ii-seq";
          rec.value = base_->fresh_least_in_upset(s, cone_values(gamma, nu));
        } else {
          rec.case_label = "iii";
          rec.value = base_->fresh_least_in_upset(base_->bottom(), cone_values(gamma, nu));
        }
      } else {
        // liminf of heights along the canonical probe of the index
        OmegaPattern pat = fundamental_pattern(nu);
        std::vector<CnfOrdinal> hts;
        for (int k = 1; k <= cfg_.probe_depth; ++k)
          hts.push_back(base_->ht(p_at(gamma, pat.element(k))));
        auto sup = certified_sup(hts);
        if (!sup)
          fail(Errc::UncertifiedLimit, "no stable height pattern along the probe of index " +
                                           nu.to_string() + " at " + gamma.to_string());
        if (*sup < base_->bound()) {
          rec.case_label = "iii";
          rec.value = base_->point_at_height(*sup);
        } else if (base_->stage() > 0) {
          fail(Errc::CaseFourUnreachable,
               "height liminf reached the codomain bound above stage 0 at index " +
                   nu.to_string());
        } else {
          rec.case_label = "iv";
          rec.value = base_->fresh_least_in_upset(base_->bottom(), cone_values(gamma, nu));
        }
      }
    }
    base_->register_point(rec.value);
    g.pvec[nu] = rec;
    return rec.value;
  }

  /** The canonical index cone: dependencies the recursion itself walks.
      Freshness exclusions range over it, which makes choices independent of
      request history and coherent between a limit and its limit points. */
  const std::vector<CnfOrdinal>& cone_indices(const CnfOrdinal& nu) {
    if (auto it = cones_.find(nu); it != cones_.end()) return it->second;
    std::set<CnfOrdinal> acc;
    collect_cone(nu, acc);
    return cones_[nu] = std::vector<CnfOrdinal>(acc.begin(), acc.end());
  }

 private:
  void collect_cone(const CnfOrdinal& nu, std::set<CnfOrdinal>& acc) {
    if (nu.is_zero()) return;
    if (nu.is_successor()) {
      CnfOrdinal prev = nu.predecessor();
      if (acc.insert(prev).second) collect_cone(prev, acc);
      return;
    }
    OmegaPattern pat = fundamental_pattern(nu);
    for (int k = 1; k <= cfg_.probe_depth; ++k) {
      CnfOrdinal probe = pat.element(k);
      if (acc.insert(probe).second) collect_cone(probe, acc);
    }
  }

  std::set<LadderPoint> cone_values(const CnfOrdinal& gamma, const CnfOrdinal& nu) {
    std::set<LadderPoint> out;
    for (const auto& idx : cone_indices(nu)) out.insert(p_at(gamma, idx));
    return out;
  }

  void ensure_club(const CnfOrdinal& gamma) {
    GammaRecord& g = gammas_[gamma];
    g.case_label = "case2";
    if (!g.club) {
      ClubSet c = squares_.at(gamma);
      if (!c.unbounded_in(gamma))
        fail(Errc::UncertifiedLimit, "club for " + gamma.to_string() + " is not certified cofinal");
      g.club = std::move(c);
    }
  }

  BuildConfig cfg_;
  std::shared_ptr<const StagedLadder> base_;
  CSequenceSystem squares_;
  CnfOrdinal zero_;
  std::vector<std::pair<CnfOrdinal, CnfOrdinal>> requests_;
  std::set<CnfOrdinal> support_;
  std::map<std::pair<CnfOrdinal, CnfOrdinal>, LadderPoint> memo_;
  std::map<CnfOrdinal, GammaRecord> gammas_;
  std::map<CnfOrdinal, std::vector<CnfOrdinal>> cones_;
  mutable std::recursive_mutex mu_;
};

/** RhoLike view over a finished build, with an override slot for fault
    injection. The support is a frozen snapshot: the closure of the requests
    under the recursion's own dependencies. */
class BuiltRho {
 public:
  using Cod = StagedLadder;
  using Value = LadderPoint;

  explicit BuiltRho(std::shared_ptr<RhoBuilder> b) : builder_(std::move(b)) {}

  const StagedLadder& codomain() const { return builder_->codomain(); }
  const std::vector<CnfOrdinal>& support() const { return snapshot_; }

  LadderPoint at(const CnfOrdinal& a, const CnfOrdinal& b) const {
    if (!overrides_.empty()) {
      auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
      if (auto it = overrides_.find(key); it != overrides_.end()) return it->second;
    }
    return builder_->rho(a, b);
  }

  RhoBuilder& builder() const { return *builder_; }
  std::shared_ptr<RhoBuilder> builder_ptr() const { return builder_; }

  /** Serves every support pair until the support stops growing, then takes
      the snapshot every later scan quantifies over. */
  void freeze() {
    for (;;) {
      auto snap = builder_->support_sorted();
      for (size_t i = 0; i < snap.size(); ++i)
        for (size_t j = i + 1; j < snap.size(); ++j) builder_->rho(snap[i], snap[j]);
      if (builder_->support_sorted().size() == snap.size()) break;
    }
    snapshot_ = builder_->support_sorted();
  }

  BuiltRho with_override(const CnfOrdinal& a, const CnfOrdinal& b, LadderPoint v) const {
    BuiltRho out = *this;
    auto key = a <= b ? std::make_pair(a, b) : std::make_pair(b, a);
    out.overrides_[key] = std::move(v);
    return out;
  }

  const std::map<std::pair<CnfOrdinal, CnfOrdinal>, LadderPoint>& overrides() const {
    return overrides_;
  }

 private:
  std::shared_ptr<RhoBuilder> builder_;
  std::vector<CnfOrdinal> snapshot_;
  std::map<std::pair<CnfOrdinal, CnfOrdinal>, LadderPoint> overrides_;
};

static_assert(RhoLike<BuiltRho>);

struct RhoBuild {
  BuiltRho rho;
  std::shared_ptr<StagedLadder> ladder;  // the packaged next stage
};

inline RhoBuild run_build(BuildRoute route, const CnfOrdinal& bound,
                          std::shared_ptr<const StagedLadder> base,
                          const CSequenceSystem& squares,
                          std::vector<std::pair<CnfOrdinal, CnfOrdinal>> requests,
                          std::uint64_t seed = 1, int probe_depth = 8) {
  BuildConfig cfg;
  cfg.route = route;
  cfg.bound = bound;
  cfg.seed = seed;
  cfg.probe_depth = probe_depth;
  if (route == BuildRoute::ladder && !base->is_lattice_codomain())
    fail(Errc::InputError, "ladder route needs a lattice codomain");
  auto builder = std::make_shared<RhoBuilder>(cfg, base, squares);
  std::sort(requests.begin(), requests.end());
  builder->set_requests(requests);
  for (const auto& [a, b] : requests) builder->rho(a, b);
  BuiltRho rho(builder);
  rho.freeze();
  auto ladder = StagedLadder::over(
      base, bound, [builder](const CnfOrdinal& a, const CnfOrdinal& b) { return builder->rho(a, b); },
      [builder]() { return builder->support_sorted(); }, route == BuildRoute::ladder);
  return {std::move(rho), std::move(ladder)};
}

inline RhoBuild build_semiladder_rho(const CnfOrdinal& bound,
                                     std::shared_ptr<const StagedLadder> base,
                                     const CSequenceSystem& squares,
                                     std::vector<std::pair<CnfOrdinal, CnfOrdinal>> requests,
                                     std::uint64_t seed = 1, int probe_depth = 8) {
  return run_build(BuildRoute::semiladder, bound, std::move(base), squares, std::move(requests),
                   seed, probe_depth);
}

inline RhoBuild build_ladder_rho(const CnfOrdinal& bound,
                                 std::shared_ptr<const StagedLadder> base,
                                 const CSequenceSystem& squares,
                                 std::vector<std::pair<CnfOrdinal, CnfOrdinal>> requests,
                                 std::uint64_t seed = 1, int probe_depth = 8) {
  return run_build(BuildRoute::ladder, bound, std::move(base), squares, std::move(requests), seed,
                   probe_depth);
}

}  // namespace ladder
