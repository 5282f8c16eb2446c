#pragma once

#include <algorithm>
#include <cctype>
#include <compare>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "ladder/common.hpp"

namespace ladder {

inline constexpr int kDefaultExponentBound = 4;

/** Ordinal below w^K in Cantor normal form: a strictly descending sum of
    w^e * c terms with positive integer coefficients. The exponent bound K
    travels with the value; mixed-bound arithmetic is rejected. */
class CnfOrdinal {
 public:
  struct Term {
    int exp = 0;
    std::uint64_t coeff = 0;
    friend bool operator==(const Term&, const Term&) = default;
  };

  CnfOrdinal() : bound_(kDefaultExponentBound) {}
  explicit CnfOrdinal(int bound) : bound_(bound) {
    if (bound < 1) fail(Errc::InputError, "exponent bound must be >= 1");
  }

  static CnfOrdinal zero(int bound = kDefaultExponentBound) { return CnfOrdinal(bound); }

  static CnfOrdinal nat(std::uint64_t n, int bound = kDefaultExponentBound) {
    CnfOrdinal o(bound);
    if (n > 0) o.terms_.push_back({0, n});
    return o;
  }

  static CnfOrdinal omega_power(int exp, std::uint64_t coeff = 1,
                                int bound = kDefaultExponentBound) {
    CnfOrdinal o(bound);
    if (exp >= bound) fail(Errc::BoundExceeded, "w^" + std::to_string(exp) + " at bound K=" +
                                                    std::to_string(bound));
    if (coeff > 0) o.terms_.push_back({exp, coeff});
    return o;
  }

  static CnfOrdinal omega(int bound = kDefaultExponentBound) { return omega_power(1, 1, bound); }

  const std::vector<Term>& terms() const { return terms_; }
  int bound() const { return bound_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_successor() const { return !terms_.empty() && terms_.back().exp == 0; }
  bool is_limit() const { return !terms_.empty() && terms_.back().exp > 0; }

  int leading_exp() const { return terms_.empty() ? -1 : terms_.front().exp; }

  std::optional<std::uint64_t> as_nat() const {
    if (terms_.empty()) return 0;
    if (terms_.size() == 1 && terms_[0].exp == 0) return terms_[0].coeff;
    return std::nullopt;
  }

  friend bool operator==(const CnfOrdinal& a, const CnfOrdinal& b) {
    return a.terms_ == b.terms_;
  }

  friend std::strong_ordering operator<=>(const CnfOrdinal& a, const CnfOrdinal& b) {
    size_t n = std::min(a.terms_.size(), b.terms_.size());
    for (size_t i = 0; i < n; ++i) {
      if (a.terms_[i].exp != b.terms_[i].exp)
        return a.terms_[i].exp <=> b.terms_[i].exp;
      if (a.terms_[i].coeff != b.terms_[i].coeff)
        return a.terms_[i].coeff <=> b.terms_[i].coeff;
    }
    return a.terms_.size() <=> b.terms_.size();
  }

  /** Ordinal addition (left absorption): terms of *this strictly below the
      leading exponent of rhs vanish. */
  CnfOrdinal add(const CnfOrdinal& rhs) const {
    check_same_bound(rhs);
    if (rhs.is_zero()) return *this;
    CnfOrdinal out(bound_);
    int e = rhs.terms_.front().exp;
    for (const Term& t : terms_) {
      if (t.exp > e) out.terms_.push_back(t);
    }
    std::uint64_t carry = 0;
    for (const Term& t : terms_) {
      if (t.exp == e) carry = t.coeff;
    }
    out.terms_.push_back({e, carry + rhs.terms_.front().coeff});
    out.terms_.insert(out.terms_.end(), rhs.terms_.begin() + 1, rhs.terms_.end());
    return out;
  }

  CnfOrdinal successor() const { return add(nat(1, bound_)); }

  /** Predecessor of a successor ordinal. */
  CnfOrdinal predecessor() const {
    if (!is_successor()) fail(Errc::InputError, "predecessor of non-successor " + to_string());
    CnfOrdinal out = *this;
    if (out.terms_.back().coeff == 1)
      out.terms_.pop_back();
    else
      out.terms_.back().coeff -= 1;
    return out;
  }

  /** The unique x with a + x = *this, for a <= *this. */
  CnfOrdinal subtract_left(const CnfOrdinal& a) const {
    check_same_bound(a);
    if (a > *this) fail(Errc::InputError, "subtract_left: " + a.to_string() + " > " + to_string());
    size_t i = 0;
    while (i < a.terms_.size() && i < terms_.size() && a.terms_[i] == terms_[i]) ++i;
    CnfOrdinal out(bound_);
    if (i == a.terms_.size()) {
      out.terms_.assign(terms_.begin() + i, terms_.end());
      return out;
    }
    // First differing term: either smaller exponent on a's side, or same
    // exponent with smaller coefficient (a < *this ensures no other case).
    const Term& ta = a.terms_[i];
    const Term& tb = terms_[i];
    if (ta.exp == tb.exp && ta.coeff < tb.coeff) {
      out.terms_.push_back({ta.exp, tb.coeff - ta.coeff});
      out.terms_.insert(out.terms_.end(), terms_.begin() + i + 1, terms_.end());
    } else {
      out.terms_.assign(terms_.begin() + i, terms_.end());
    }
    return out;
  }

  /** Drop all terms with exponent <= e. */
  CnfOrdinal truncate_above(int e) const {
    CnfOrdinal out(bound_);
    for (const Term& t : terms_)
      if (t.exp > e) out.terms_.push_back(t);
    return out;
  }

  std::uint64_t coeff_at(int e) const {
    for (const Term& t : terms_)
      if (t.exp == e) return t.coeff;
    return 0;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const Term& t : terms_) {
      if (!first) os << "+";
      first = false;
      if (t.exp == 0) {
        os << t.coeff;
      } else {
        if (t.exp == 1)
          os << "w";
        else
          os << "w^" << t.exp;
        if (t.coeff > 1) os << "*" << t.coeff;
      }
    }
    return os.str();
  }

  static CnfOrdinal parse(const std::string& s, int bound = kDefaultExponentBound);

 private:
  void check_same_bound(const CnfOrdinal& o) const {
    if (bound_ != o.bound_)
      fail(Errc::InputError, "mixed exponent bounds " + std::to_string(bound_) + " vs " +
                                 std::to_string(o.bound_));
  }

  std::vector<Term> terms_;
  int bound_;
};

inline CnfOrdinal CnfOrdinal::parse(const std::string& s, int bound) {
  if (s.empty()) fail(Errc::InputError, "empty ordinal string");
  if (s == "0") return zero(bound);
  CnfOrdinal out(bound);
  size_t pos = 0;
  int last_exp = bound;  // exponents must strictly descend
  auto read_uint = [&](const char* what) -> std::uint64_t {
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (start == pos) fail(Errc::InputError, std::string("expected ") + what + " in '" + s + "'");
    return std::stoull(s.substr(start, pos - start));
  };
  while (true) {
    int exp = 0;
    std::uint64_t coeff = 1;
    if (pos < s.size() && s[pos] == 'w') {
      ++pos;
      exp = 1;
      if (pos < s.size() && s[pos] == '^') {
        ++pos;
        std::uint64_t e = read_uint("exponent");
        exp = static_cast<int>(e);
      }
      if (pos < s.size() && s[pos] == '*') {
        ++pos;
        coeff = read_uint("coefficient");
      }
    } else {
      coeff = read_uint("coefficient");
      exp = 0;
    }
    if (exp >= bound)
      fail(Errc::BoundExceeded, "exponent " + std::to_string(exp) + " >= bound K=" +
                                    std::to_string(bound) + " in '" + s + "'");
    if (coeff == 0) fail(Errc::InputError, "zero coefficient in '" + s + "'");
    if (exp >= last_exp) fail(Errc::InputError, "exponents must strictly descend in '" + s + "'");
    last_exp = exp;
    out.terms_.push_back({exp, coeff});
    if (pos == s.size()) break;
    if (s[pos] != '+') fail(Errc::InputError, "unexpected '" + s.substr(pos, 1) + "' in '" + s + "'");
    ++pos;
  }
  return out;
}

/** Finite description of the strictly increasing sequence k -> prefix + w^step * k
    (k >= 1). Serves as the certificate for cofinal omega-sequences. */
struct OmegaPattern {
  CnfOrdinal prefix;
  int step_exp = 0;

  CnfOrdinal element(std::uint64_t k) const {
    return prefix.add(CnfOrdinal::omega_power(step_exp, k, prefix.bound()));
  }

  /** sup of the described sequence. */
  CnfOrdinal limit() const {
    CnfOrdinal head = prefix.truncate_above(step_exp);
    if (step_exp + 1 >= prefix.bound())
      fail(Errc::BoundExceeded,
           "omega-limit of step w^" + std::to_string(step_exp) + " exceeds bound");
    return head.add(CnfOrdinal::omega_power(step_exp + 1, 1, prefix.bound()));
  }

  /** Membership: beta = prefix + w^step * k for some k >= 1. */
  std::optional<std::uint64_t> index_of(const CnfOrdinal& beta) const {
    CnfOrdinal head = prefix.truncate_above(step_exp);
    std::uint64_t base = prefix.coeff_at(step_exp);
    // beta must be head followed by exactly one term (step_exp, base + k).
    const auto& ht = head.terms();
    const auto& bt = beta.terms();
    if (bt.size() != ht.size() + 1) return std::nullopt;
    for (size_t i = 0; i < ht.size(); ++i)
      if (!(bt[i] == ht[i])) return std::nullopt;
    if (bt.back().exp != step_exp || bt.back().coeff <= base) return std::nullopt;
    return bt.back().coeff - base;
  }

  friend bool operator==(const OmegaPattern&, const OmegaPattern&) = default;
};

inline CnfOrdinal omega_limit(const OmegaPattern& p) { return p.limit(); }

/** Canonical fundamental sequence of a limit ordinal: for gamma = delta + w^(e+1),
    the pattern k -> delta + w^e * k. */
inline OmegaPattern fundamental_pattern(const CnfOrdinal& gamma) {
  if (!gamma.is_limit()) fail(Errc::InputError, "fundamental_pattern of non-limit " + gamma.to_string());
  const auto& terms = gamma.terms();
  int e = terms.back().exp;
  // delta = gamma with one copy of w^e removed from the last term
  CnfOrdinal delta(gamma.bound());
  for (size_t i = 0; i + 1 < terms.size(); ++i)
    delta = delta.add(CnfOrdinal::omega_power(terms[i].exp, terms[i].coeff, gamma.bound()));
  if (terms.back().coeff > 1)
    delta = delta.add(CnfOrdinal::omega_power(e, terms.back().coeff - 1, gamma.bound()));
  return OmegaPattern{delta, e - 1};
}

enum class CofinalityClass { zero, successor, omega };

/** Every limit below w^K has cofinality omega; the classifier is structural. */
inline CofinalityClass cofinality_class(const CnfOrdinal& a) {
  if (a.is_zero()) return CofinalityClass::zero;
  if (a.is_successor()) return CofinalityClass::successor;
  return CofinalityClass::omega;
}

/** Detect a stable-difference pattern in a strictly increasing sequence:
    succeeds when consecutive CNF differences coincide, yielding the certified
    sup. Used to certify liminf/sup of materialized probes. */
inline std::optional<CnfOrdinal> certified_sup(const std::vector<CnfOrdinal>& seq) {
  if (seq.size() < 2) return std::nullopt;
  for (size_t i = 0; i + 1 < seq.size(); ++i)
    if (!(seq[i] < seq[i + 1])) return std::nullopt;
  CnfOrdinal diff = seq[1].subtract_left(seq[0]);
  for (size_t i = 1; i + 1 < seq.size(); ++i) {
    if (!(seq[i + 1].subtract_left(seq[i]) == diff)) return std::nullopt;
  }
  OmegaPattern p{seq[0], diff.leading_exp()};
  return p.limit();
}

struct LimitPoint {
  CnfOrdinal beta;
  OmegaPattern certificate;
};

/** Certified limit points of S within the universe U. A point qualifies only
    via a pattern witness: either a supplied tail whose limit is beta, or a
    stable-difference pattern detected among the explicit elements converging
    to beta. Finite data without a certificate has no limit points. */
inline std::vector<LimitPoint> limit_points(const std::vector<CnfOrdinal>& elems,
                                            const std::vector<OmegaPattern>& tails,
                                            const std::vector<CnfOrdinal>& universe,
                                            int probe_depth = 8) {
  std::vector<LimitPoint> out;
  std::vector<CnfOrdinal> sorted = elems;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  for (const CnfOrdinal& beta : universe) {
    if (!beta.is_limit()) continue;
    bool found = false;
    OmegaPattern cert;
    for (const OmegaPattern& t : tails) {
      if (t.limit() == beta) {
        found = true;
        cert = t;
        break;
      }
    }
    if (!found) {
      // probe the tail of the explicit elements below beta
      std::vector<CnfOrdinal> below;
      for (const CnfOrdinal& x : sorted)
        if (x < beta) below.push_back(x);
      if (below.size() >= 2) {
        size_t take = std::min<size_t>(below.size(), static_cast<size_t>(probe_depth));
        std::vector<CnfOrdinal> probe(below.end() - take, below.end());
        auto sup = certified_sup(probe);
        if (sup && *sup == beta) {
          CnfOrdinal diff = probe[1].subtract_left(probe[0]);
          found = true;
          cert = OmegaPattern{probe[0], diff.leading_exp()};
        }
      }
    }
    if (found) out.push_back({beta, cert});
  }
  return out;
}

}  // namespace ladder
