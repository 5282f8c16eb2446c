#pragma once

#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ladder/common.hpp"
#include "ladder/ordinal.hpp"

namespace ladder {

/** A club-like subset of a limit ordinal gamma, in one of two finitely
    describable forms: a finite explicit part followed by an omega-pattern
    tail, or the full initial segment (optionally minus a finite exclusion
    set, which only corrupted test systems use). */
struct ClubSet {
  enum class Kind { pattern, full };
  Kind kind = Kind::pattern;
  std::vector<CnfOrdinal> explicit_elems;  // sorted; all below the tail
  std::optional<OmegaPattern> tail;        // pattern kind
  std::vector<CnfOrdinal> removed;         // full kind only

  static ClubSet from_pattern(OmegaPattern tail, std::vector<CnfOrdinal> explicit_elems = {}) {
    ClubSet c;
    c.kind = Kind::pattern;
    c.tail = tail;
    c.explicit_elems = std::move(explicit_elems);
    std::sort(c.explicit_elems.begin(), c.explicit_elems.end());
    for (const auto& e : c.explicit_elems)
      if (!(e < tail.element(1)))
        fail(Errc::InputError, "explicit elements must sit below the tail");
    return c;
  }

  static ClubSet full_segment(std::vector<CnfOrdinal> removed = {}) {
    ClubSet c;
    c.kind = Kind::full;
    c.removed = std::move(removed);
    std::sort(c.removed.begin(), c.removed.end());
    return c;
  }

  bool contains(const CnfOrdinal& beta, const CnfOrdinal& gamma) const {
    if (!(beta < gamma)) return false;
    if (kind == Kind::full) {
      return !std::binary_search(removed.begin(), removed.end(), beta);
    }
    for (const auto& e : explicit_elems)
      if (e == beta) return true;
    return tail && tail->index_of(beta).has_value();
  }

  /** Certificate that the set is unbounded in gamma, when one exists. */
  bool unbounded_in(const CnfOrdinal& gamma) const {
    if (kind == Kind::full) return true;
    return tail && tail->limit() == gamma;
  }

  /** Increasing enumeration. Indices are ordinals; for pattern clubs only
      finite indices occur, for full segments theta is the identity.
      Enumeration of a corrupted full segment is not supported. */
  CnfOrdinal theta(const CnfOrdinal& index, const CnfOrdinal& gamma) const {
    if (kind == Kind::full) {
      if (!removed.empty()) fail(Errc::InputError, "enumeration of a corrupted full segment");
      if (!(index < gamma)) fail(Errc::InputError, "enumeration index out of range");
      return index;
    }
    auto k = index.as_nat();
    if (!k) fail(Errc::InputError, "pattern club has only finite indices");
    size_t j = explicit_elems.size();
    if (*k < j) return explicit_elems[*k];
    if (!tail) fail(Errc::UncertifiedLimit, "explicit-only club has no tail element");
    return tail->element(*k - j + 1);
  }

  /** Least index nu with alpha <= theta(nu). */
  CnfOrdinal mu(const CnfOrdinal& alpha, const CnfOrdinal& /*gamma*/) const {
    if (kind == Kind::full) {
      if (!removed.empty()) fail(Errc::InputError, "enumeration of a corrupted full segment");
      return alpha;  // theta is the identity
    }
    for (size_t i = 0; i < explicit_elems.size(); ++i)
      if (alpha <= explicit_elems[i]) return CnfOrdinal::nat(i, alpha.bound());
    if (!tail) fail(Errc::UncertifiedLimit, "explicit-only club cannot serve mu");
    size_t j = explicit_elems.size();
    const OmegaPattern& t = *tail;
    if (alpha <= t.element(1)) return CnfOrdinal::nat(j, alpha.bound());
    // solve for the least k with head + w^e*(c0+k) >= alpha
    CnfOrdinal head = t.prefix.truncate_above(t.step_exp);
    std::uint64_t c0 = t.prefix.coeff_at(t.step_exp);
    CnfOrdinal r = alpha.subtract_left(head);
    if (r.leading_exp() > t.step_exp)
      fail(Errc::InputError, "alpha beyond the club's limit");
    std::uint64_t cr = r.coeff_at(t.step_exp);
    bool has_lower = !(r.truncate_above(t.step_exp - 1) == r);  // terms below w^e present
    std::uint64_t target = cr + (has_lower ? 1 : 0);            // need c0 + k >= target
    std::uint64_t rel = target > c0 ? target - c0 : 1;          // and k >= 1
    return CnfOrdinal::nat(j + rel - 1, alpha.bound());
  }

  /** Elements below beta, materialized up to probe_depth tail terms. */
  std::vector<CnfOrdinal> materialize_below(const CnfOrdinal& beta, int probe_depth = 8) const {
    std::vector<CnfOrdinal> out;
    if (kind == Kind::full) {
      fail(Errc::InputError, "full segments materialize against a support, not standalone");
    }
    for (const auto& e : explicit_elems)
      if (e < beta) out.push_back(e);
    if (tail) {
      for (std::uint64_t k = 1; k <= static_cast<std::uint64_t>(probe_depth); ++k) {
        CnfOrdinal x = tail->element(k);
        if (!(x < beta)) break;
        out.push_back(x);
      }
    }
    return out;
  }
};

enum class CofClass { small, large };

struct CofInfo {
  CofClass cls = CofClass::large;
  int floor = 1;  // virtualized |down-set| requirement for Case-1 choices
};

/** The square-like data: club assignments for designated limits, the
    virtualized cofinality oracle, and explicit cofinal sequences for
    small-class limits. */
class CSequenceSystem {
 public:
  enum class OtpCap { omega, unbounded };

  CSequenceSystem(CnfOrdinal bound, OtpCap cap) : bound_(std::move(bound)), cap_(cap) {}

  CnfOrdinal bound() const { return bound_; }
  OtpCap otp_cap() const { return cap_; }

  void set_provider(std::function<ClubSet(const CnfOrdinal&)> f) { provider_ = std::move(f); }
  void set_oracle(std::function<CofInfo(const CnfOrdinal&)> f) { oracle_ = std::move(f); }
  void override_club(const CnfOrdinal& gamma, ClubSet c) { overrides_[gamma] = std::move(c); }
  void override_oracle(const CnfOrdinal& gamma, CofInfo i) { oracle_overrides_[gamma] = i; }
  void set_small_seq(const CnfOrdinal& gamma, std::vector<CnfOrdinal> seq) {
    small_seqs_[gamma] = std::move(seq);
  }
  void set_name(std::string n) { name_ = std::move(n); }
  const std::string& name() const { return name_; }

  ClubSet at(const CnfOrdinal& gamma) const {
    if (!gamma.is_limit()) fail(Errc::InputError, "clubs are assigned to limits only");
    if (!(gamma <= bound_)) fail(Errc::BoundExceeded, "gamma beyond the universe bound");
    if (auto it = overrides_.find(gamma); it != overrides_.end()) return it->second;
    if (!provider_) fail(Errc::InputError, "no club assigned to " + gamma.to_string());
    return provider_(gamma);
  }

  CofInfo cof_class(const CnfOrdinal& gamma) const {
    if (auto it = oracle_overrides_.find(gamma); it != oracle_overrides_.end()) return it->second;
    if (oracle_) return oracle_(gamma);
    return {CofClass::large, 1};
  }

  std::optional<std::vector<CnfOrdinal>> small_seq(const CnfOrdinal& gamma) const {
    if (auto it = small_seqs_.find(gamma); it != small_seqs_.end()) return it->second;
    return std::nullopt;
  }

 private:
  CnfOrdinal bound_;
  OtpCap cap_;
  std::string name_ = "custom";
  std::function<ClubSet(const CnfOrdinal&)> provider_;
  std::function<CofInfo(const CnfOrdinal&)> oracle_;
  std::map<CnfOrdinal, ClubSet> overrides_;
  std::map<CnfOrdinal, CofInfo> oracle_overrides_;
  std::map<CnfOrdinal, std::vector<CnfOrdinal>> small_seqs_;
};

/** Standard fundamental sequences: for gamma = delta + w^(e+1) the club is
    {delta + w^e * k : k >= 1}. All limits are marked large. */
inline CSequenceSystem canonical_ladder_system(const CnfOrdinal& bound) {
  CSequenceSystem s(bound, CSequenceSystem::OtpCap::omega);
  s.set_provider([](const CnfOrdinal& gamma) {
    return ClubSet::from_pattern(fundamental_pattern(gamma));
  });
  s.set_oracle([](const CnfOrdinal&) { return CofInfo{CofClass::large, 1}; });
  s.set_name("canonical");
  return s;
}

/** Maximally coherent system: every limit gets the full initial segment. */
inline CSequenceSystem full_segment_system(const CnfOrdinal& bound) {
  CSequenceSystem s(bound, CSequenceSystem::OtpCap::unbounded);
  s.set_provider([](const CnfOrdinal&) { return ClubSet::full_segment(); });
  s.set_oracle([](const CnfOrdinal&) { return CofInfo{CofClass::large, 1}; });
  s.set_name("full");
  return s;
}

struct SquareViolation {
  std::string clause;  // "i-unbounded" | "i-closed" | "ii-otp" | "iii-coherence"
  CnfOrdinal gamma;
  CnfOrdinal beta;
  std::string detail;
};

struct SquareReport {
  bool ok = true;
  std::vector<SquareViolation> violations;
  int limits_checked = 0;
  int coherence_pairs_checked = 0;
};

namespace detail {

/** Certified limit points of a club below gamma. Full segments yield every
    limit of the support in range; a pattern club is a complete description,
    so its only possible limit point is the tail's sup. */
inline std::vector<CnfOrdinal> club_limit_points(const ClubSet& c, const CnfOrdinal& gamma,
                                                 const std::vector<CnfOrdinal>& support,
                                                 int /*probe_depth*/) {
  std::vector<CnfOrdinal> out;
  if (c.kind == ClubSet::Kind::full) {
    for (const auto& b : support)
      if (b.is_limit() && b < gamma) out.push_back(b);
    return out;
  }
  if (c.tail && c.tail->limit() < gamma) out.push_back(c.tail->limit());
  return out;
}

inline bool clubs_agree_below(const ClubSet& a, const CnfOrdinal& ga, const ClubSet& b,
                              const CnfOrdinal& gb, const CnfOrdinal& beta,
                              const std::vector<CnfOrdinal>& support, int probe_depth,
                              std::string* why) {
  // membership probes: support plus both sides' materialized pieces
  std::set<CnfOrdinal> probes;
  for (const auto& x : support)
    if (x < beta) probes.insert(x);
  auto add_side = [&](const ClubSet& c) {
    if (c.kind == ClubSet::Kind::pattern) {
      for (const auto& x : c.materialize_below(beta, probe_depth)) probes.insert(x);
    } else {
      for (const auto& x : c.removed)
        if (x < beta) probes.insert(x);
    }
  };
  add_side(a);
  add_side(b);
  for (const auto& x : probes) {
    bool ina = a.contains(x, ga) && x < beta;
    bool inb = b.contains(x, gb) && x < beta;
    if (ina != inb) {
      *why = "membership differs at " + x.to_string();
      return false;
    }
  }
  // both restrictions must still be cofinal in beta
  auto cofinal = [&](const ClubSet& c) {
    if (c.kind == ClubSet::Kind::full) return true;
    return c.tail.has_value() && c.tail->limit() == beta;
  };
  if (!cofinal(a) || !cofinal(b)) {
    *why = "restriction loses cofinality below " + beta.to_string();
    return false;
  }
  return true;
}

}  // namespace detail

/** Clause validator for the square-like data, relative to a finite support:
    (i) each club is certified unbounded in its limit and closed with respect
    to the support's certified limit points; (ii) the order-type descriptor
    respects the declared cap; (iii) at every certified limit point with a
    large oracle class, the assigned club agrees with the restriction. */
inline SquareReport validate_square(const CSequenceSystem& s,
                                    const std::vector<CnfOrdinal>& support,
                                    int probe_depth = 8) {
  SquareReport report;
  auto note = [&](std::string clause, const CnfOrdinal& gamma, const CnfOrdinal& beta,
                  std::string detail) {
    report.ok = false;
    report.violations.push_back({std::move(clause), gamma, beta, std::move(detail)});
  };
  for (const auto& gamma : support) {
    if (!gamma.is_limit() || !(gamma <= s.bound())) continue;
    if (s.cof_class(gamma).cls != CofClass::large) continue;  // clubs exist for large class only
    ClubSet club = s.at(gamma);
    ++report.limits_checked;
    // (i) unbounded
    if (!club.unbounded_in(gamma))
      note("i-unbounded", gamma, gamma, "no certificate that the club is cofinal");
    // (i) closed relative to support
    for (const auto& beta : detail::club_limit_points(club, gamma, support, probe_depth)) {
      if (!club.contains(beta, gamma))
        note("i-closed", gamma, beta, "certified limit point escapes the club");
    }
    // (ii) order type cap
    if (club.kind == ClubSet::Kind::full && s.otp_cap() == CSequenceSystem::OtpCap::omega)
      note("ii-otp", gamma, gamma, "full segment under an omega order-type cap");
    // (iii) coherence at large-class certified limit points
    for (const auto& beta : detail::club_limit_points(club, gamma, support, probe_depth)) {
      if (!beta.is_limit()) continue;
      if (s.cof_class(beta).cls != CofClass::large) continue;
      if (!club.contains(beta, gamma)) continue;  // already flagged by closedness
      ClubSet cb = s.at(beta);
      ++report.coherence_pairs_checked;
      std::string why;
      if (!detail::clubs_agree_below(cb, beta, club, gamma, beta, support, probe_depth, &why))
        note("iii-coherence", gamma, beta, why);
    }
  }
  return report;
}

/** Enumeration frame for Case-2 recursions at a limit gamma. */
struct LimitFrame {
  CnfOrdinal gamma;
  ClubSet club;

  CnfOrdinal theta(const CnfOrdinal& index) const { return club.theta(index, gamma); }
  CnfOrdinal mu(const CnfOrdinal& alpha) const { return club.mu(alpha, gamma); }
};

}  // namespace ladder
