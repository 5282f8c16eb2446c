#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ladder {

inline constexpr const char* kVersion = "1.0.0";

enum class Errc {
  NotAPartialOrder,
  NoJoin,
  NotAnIdeal,
  NotALattice,
  SizeGuard,
  BoundExceeded,
  UncertifiedLimit,
  FragmentExhausted,
  CaseFourUnreachable,
  NotWellFormed,
  PropertyViolation,
  UncertifiedSupport,
  InputError,
};

inline const char* errc_name(Errc c) {
  switch (c) {
    case Errc::NotAPartialOrder: return "NotAPartialOrder";
    case Errc::NoJoin: return "NoJoin";
    case Errc::NotAnIdeal: return "NotAnIdeal";
    case Errc::NotALattice: return "NotALattice";
    case Errc::SizeGuard: return "SizeGuard";
    case Errc::BoundExceeded: return "BoundExceeded";
    case Errc::UncertifiedLimit: return "UncertifiedLimit";
    case Errc::FragmentExhausted: return "FragmentExhausted";
    case Errc::CaseFourUnreachable: return "CaseFourUnreachable";
    case Errc::NotWellFormed: return "NotWellFormed";
    case Errc::PropertyViolation: return "PropertyViolation";
    case Errc::UncertifiedSupport: return "UncertifiedSupport";
    case Errc::InputError: return "InputError";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}
  Errc code() const { return code_; }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& what) { throw Error(code, what); }

// Default budgets for the exhaustive scans. Callers can override per call.
struct Budget {
  int max_subset_scan_elements = 64;      // refuse 2^m style scans above this
  std::uint64_t embedding_nodes = 10'000'000;  // search nodes for M-J embeddings
  int covering_family_cap = 6;            // max ideals per brute-forced lower covering
  int fragment_cap = 40;                  // join-closure cap for freeness fragments
  int probe_depth = 8;                    // terms probed when certifying an omega-limit
};

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace ladder
