#pragma once

#include <atomic>
#include <string>
#include <thread>
#include <vector>

#include "ladder/enumerate.hpp"
#include "ladder/finite_builder.hpp"
#include "ladder/gallery.hpp"
#include "ladder/mj.hpp"
#include "ladder/rho.hpp"

namespace ladder {

struct SweepReport {
  std::string name;
  std::uint64_t instances = 0;
  std::uint64_t discrepancies = 0;
  std::vector<std::string> witnesses;  // capped at 16

  SweepReport() = default;
  explicit SweepReport(std::string n) : name(std::move(n)) {}

  bool ok() const { return discrepancies == 0; }
  void merge_finding(const std::string& w) {
    ++discrepancies;
    if (witnesses.size() < 16) witnesses.push_back(w);
  }
};

namespace detail {

/** Runs f(i) over 0..count-1 on a small pool; findings land in a preallocated
    slot per index, so the merged report does not depend on scheduling. */
template <class F>
std::vector<std::vector<std::string>> parallel_findings(size_t count, F&& f,
                                                        unsigned threads = 0) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, 16);
  std::vector<std::vector<std::string>> results(count);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= count) return;
      results[i] = f(i);
    }
  };
  if (threads <= 1 || count <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return results;
}

}  // namespace detail

/** Lower-covering existence versus freeness, exhaustively over the small
    semilattices: every element has a covering of at most n ideals iff the
    structure embeds no (n+1)-atom top. */
inline SweepReport sweep_covering_vs_freeness(int max_elements = 6, int max_degree = 4,
                                              int family_cap = 6, unsigned threads = 0) {
  SweepReport report{"covering-vs-freeness"};
  auto family = all_join_semilattices_up_to(max_elements);
  auto findings = detail::parallel_findings(
      family.size(),
      [&](size_t idx) {
        std::vector<std::string> out;
        const auto& p = family[idx];
        auto ideals = enumerate_ideals(p);
        for (int n = 0; n <= max_degree; ++n) {
          bool covered = true;
          for (int x = 0; x < p.size(); ++x)
            if (min_lower_covering_size(p, x, ideals, family_cap) > n) covered = false;
          if (covered != is_mj_free(p, n + 1))
            out.push_back("instance " + std::to_string(idx) + " at n=" + std::to_string(n));
        }
        return out;
      },
      threads);
  report.instances = family.size() * (max_degree + 1);
  for (const auto& fs : findings)
    for (const auto& w : fs) report.merge_finding(w);
  return report;
}

/** Freeness forces small breadth on the same family. */
inline SweepReport sweep_freeness_breadth(int max_elements = 6, int max_degree = 4,
                                          unsigned threads = 0) {
  SweepReport report{"freeness-breadth"};
  auto family = all_join_semilattices_up_to(max_elements);
  auto findings = detail::parallel_findings(
      family.size(),
      [&](size_t idx) {
        std::vector<std::string> out;
        const auto& p = family[idx];
        int b = breadth(p).n;
        for (int n = 0; n <= max_degree; ++n)
          if (is_mj_free(p, n + 1) && b > n)
            out.push_back("instance " + std::to_string(idx) + " breadth " + std::to_string(b) +
                          " exceeds " + std::to_string(n));
        return out;
      },
      threads);
  report.instances = family.size() * (max_degree + 1);
  for (const auto& fs : findings)
    for (const auto& w : fs) report.merge_finding(w);
  return report;
}

namespace detail {

/** Brute-forced lower coverings of x with at most cap ideals, as families of
    sorted carriers; redundant (nested) picks are skipped and any family that
    covers is not extended further. */
inline std::vector<std::vector<std::vector<int>>> all_lower_coverings(
    const JoinSemilattice& p, int x, const std::vector<std::vector<int>>& ideals, int cap) {
  std::vector<int> want;
  for (int y = 0; y < p.size(); ++y)
    if (p.lt(y, x)) want.push_back(y);
  std::vector<const std::vector<int>*> usable;
  for (const auto& c : ideals) {
    bool inside = true;
    for (int y : c)
      if (!p.lt(y, x)) inside = false;
    if (inside) usable.push_back(&c);
  }
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<const std::vector<int>*> pick;
  auto rec = [&](auto&& self, size_t start) -> void {
    std::vector<int> got;
    for (auto* c : pick)
      for (int y : *c) got.push_back(y);
    std::sort(got.begin(), got.end());
    got.erase(std::unique(got.begin(), got.end()), got.end());
    if (got == want && !pick.empty()) {
      std::vector<std::vector<int>> fam;
      for (auto* c : pick) fam.push_back(*c);
      out.push_back(std::move(fam));
      return;
    }
    if (static_cast<int>(pick.size()) == cap) return;
    for (size_t i = start; i < usable.size(); ++i) {
      bool redundant = false;
      for (auto* c : pick)
        if (std::includes(c->begin(), c->end(), usable[i]->begin(), usable[i]->end()) ||
            std::includes(usable[i]->begin(), usable[i]->end(), c->begin(), c->end()))
          redundant = true;
      if (redundant) continue;
      pick.push_back(usable[i]);
      self(self, i + 1);
      pick.pop_back();
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

/** Least coverings exist, are exact, and sit inside every brute-forced
    covering; containment makes them unique among minimal ones. */
inline SweepReport sweep_least_covering(int max_elements = 6, int family_cap = 6,
                                        unsigned threads = 0) {
  SweepReport report{"least-covering"};
  auto family = all_join_semilattices_up_to(max_elements);
  std::atomic<std::uint64_t> instances{0};
  auto findings = detail::parallel_findings(
      family.size(),
      [&](size_t idx) {
        std::vector<std::string> out;
        const auto& p = family[idx];
        auto ideals = enumerate_ideals(p);
        for (int x = 0; x < p.size(); ++x) {
          auto least = least_finite_lower_covering(p, x);
          if (!covering_is_exact(p, least)) {
            out.push_back("inexact least covering in instance " + std::to_string(idx));
            continue;
          }
          std::vector<std::vector<int>> least_carriers;
          for (const auto& ideal : least.ideals) least_carriers.push_back(ideal.carrier);
          for (const auto& fam : detail::all_lower_coverings(p, x, ideals, family_cap)) {
            ++instances;
            for (const auto& c : least_carriers)
              if (std::find(fam.begin(), fam.end(), c) == fam.end())
                out.push_back("least covering escapes a family in instance " +
                              std::to_string(idx));
          }
        }
        return out;
      },
      threads);
  report.instances = instances.load();
  for (const auto& fs : findings)
    for (const auto& w : fs) report.merge_finding(w);
  return report;
}

/** Freeness is monotone in the index. */
inline SweepReport sweep_freeness_monotonicity(int max_elements = 6, int max_degree = 6,
                                               unsigned threads = 0) {
  SweepReport report{"freeness-monotonicity"};
  auto family = all_join_semilattices_up_to(max_elements);
  auto findings = detail::parallel_findings(
      family.size(),
      [&](size_t idx) {
        std::vector<std::string> out;
        const auto& p = family[idx];
        bool free_before = false;
        for (int n = 0; n <= max_degree; ++n) {
          bool free = is_mj_free(p, n);
          if (free_before && !free)
            out.push_back("monotonicity breaks in instance " + std::to_string(idx) + " at n=" +
                          std::to_string(n));
          free_before = free;
        }
        return out;
      },
      threads);
  report.instances = family.size() * (max_degree + 1);
  for (const auto& fs : findings)
    for (const auto& w : fs) report.merge_finding(w);
  return report;
}

/** The trichotomy classifier against direct order testing, over every rho
    map from a small ordinal into the stock codomains. */
inline SweepReport sweep_rho_trichotomy(std::vector<int> gammas = {2, 3, 4},
                                        unsigned threads = 0) {
  SweepReport report{"rho-trichotomy"};
  std::vector<JoinSemilattice> family = {gallery::chain(2), gallery::chain(3), gallery::diamond(),
                                         gallery::m3()};
  struct Chunk {
    const JoinSemilattice* b;
    int gamma;
    std::uint64_t lo, hi;
  };
  std::vector<Chunk> chunks;
  std::uint64_t total = 0;
  for (int gamma : gammas)
    for (const auto& b : family) {
      std::uint64_t slots = static_cast<std::uint64_t>(gamma) * (gamma - 1) / 2;
      std::uint64_t count = 1;
      for (std::uint64_t s = 0; s < slots; ++s) count *= b.size();
      total += count;
      std::uint64_t pieces = std::min<std::uint64_t>(count, 64);
      for (std::uint64_t c = 0; c < pieces; ++c)
        chunks.push_back({&b, gamma, count * c / pieces, count * (c + 1) / pieces});
    }
  auto findings = detail::parallel_findings(
      chunks.size(),
      [&](size_t idx) {
        std::vector<std::string> out;
        const Chunk& chunk = chunks[idx];
        const JoinSemilattice& b = *chunk.b;
        int gamma = chunk.gamma;
        std::vector<std::pair<int, int>> slots;
        for (int i = 0; i < gamma; ++i)
          for (int j = i + 1; j < gamma; ++j) slots.push_back({i, j});
        for (std::uint64_t code = chunk.lo; code < chunk.hi; ++code) {
          std::vector<int> table(gamma * gamma, 0);
          std::uint64_t rest = code;
          for (const auto& [i, j] : slots) {
            table[i * gamma + j] = static_cast<int>(rest % b.size());
            rest /= b.size();
          }
          TableRho r(&b, gamma, std::move(table));
          auto cls = classify(r);
          if (!cls.direct) {
            out.push_back("missing direct report");
            continue;
          }
          if (!cls.agree)
            out.push_back("verdict mismatch: rho-side " +
                          std::string(rho_class_name(cls.verdict)) + " vs direct " +
                          rho_class_name(cls.direct->verdict()));
          if ((cls.verdict == RhoClass::join_semilattice || cls.verdict == RhoClass::lattice) &&
              !(cls.quasi_product && *cls.quasi_product))
            out.push_back("semilattice verdict without quasi-product axioms");
        }
        return out;
      },
      threads);
  report.instances = total;
  for (const auto& fs : findings)
    for (const auto& w : fs) report.merge_finding(w);
  return report;
}

/** The finite quasi-product construction over every small well-founded base
    and both chain lengths. */
inline SweepReport sweep_finite_quasi_products(int max_elements = 5,
                                               std::vector<int> lens = {2, 3},
                                               unsigned threads = 0) {
  SweepReport report{"finite-quasi-products"};
  auto family = all_join_semilattices_up_to(max_elements);
  struct Item {
    const JoinSemilattice* p;
    int len;
    size_t idx;
  };
  std::vector<Item> items;
  for (size_t i = 0; i < family.size(); ++i)
    for (int len : lens) items.push_back({&family[i], len, i});
  auto findings = detail::parallel_findings(
      items.size(),
      [&](size_t k) {
        std::vector<std::string> out;
        const auto& item = items[k];
        try {
          auto b = build_quasi_product_finite(*item.p, item.len);
          if (!check_quasi_product(b.candidate).ok)
            out.push_back("axioms fail for instance " + std::to_string(item.idx));
          auto rest = check_restriction_coherence(b);
          if (!rest.ok)
            out.push_back("restriction fails for instance " + std::to_string(item.idx) + ": " +
                          rest.detail);
          int bound = least_freeness_index(*item.p) + 1;
          if (!is_mj_free(b.candidate.order, bound))
            out.push_back("freeness fails for instance " + std::to_string(item.idx));
        } catch (const Error& e) {
          out.push_back("instance " + std::to_string(item.idx) + " threw: " + e.what());
        }
        return out;
      },
      threads);
  report.instances = items.size();
  for (const auto& fs : findings)
    for (const auto& w : fs) report.merge_finding(w);
  return report;
}

}  // namespace ladder
