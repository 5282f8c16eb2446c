#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ladder/mj.hpp"
#include "ladder/rho.hpp"

using namespace ladder;
using namespace testutil;

namespace {

CnfOrdinal O(const std::string& s) { return CnfOrdinal::parse(s); }

// rho table over gamma with explicit (i, j) -> value entries, default bottom
TableRho table_rho(const JoinSemilattice* b, int gamma,
                   const std::vector<std::tuple<int, int, int>>& entries) {
  int bot = *b->bottom();
  std::vector<int> t(gamma * gamma, bot);
  for (auto [i, j, v] : entries) t[i * gamma + j] = v;
  return TableRho(b, gamma, std::move(t));
}

// every rho map over gamma into b, by odometer over the pair slots
template <class F>
void for_all_rho(const JoinSemilattice& b, int gamma, F&& f) {
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < gamma; ++i)
    for (int j = i + 1; j < gamma; ++j) slots.push_back({i, j});
  std::vector<int> digits(slots.size(), 0);
  while (true) {
    std::vector<int> t(gamma * gamma, 0);
    for (size_t s = 0; s < slots.size(); ++s)
      t[slots[s].first * gamma + slots[s].second] = digits[s];
    f(TableRho(&b, gamma, std::move(t)));
    size_t pos = 0;
    while (pos < digits.size()) {
      if (++digits[pos] < b.size()) break;
      digits[pos++] = 0;
    }
    if (pos == digits.size()) break;
  }
}

JoinSemilattice diamond22() { return boolean_cube(2); }

}  // namespace

TEST_CASE("constant-zero rho is transitive, subadditive, and a lattice when B is") {
  auto b = diamond22();
  auto r = table_rho(&b, 3, {});
  CHECK(is_transitive(r).ok);
  CHECK(is_subadditive(r).ok);
  CHECK(has_least(r));
  auto cls = classify(r);
  CHECK(cls.verdict == RhoClass::lattice);
  REQUIRE(cls.direct);
  CHECK(cls.agree);
  REQUIRE(cls.quasi_product);
  CHECK(*cls.quasi_product);
}

TEST_CASE("transitivity failure with witness") {
  auto b = chain(2);
  auto r = table_rho(&b, 3, {{0, 2, 1}});  // rho(0,1)=0, rho(1,2)=0, rho(0,2)=1
  auto v = is_transitive(r);
  CHECK_FALSE(v.ok);
  CHECK(v.witness == std::array<CnfOrdinal, 3>{O("0"), O("1"), O("2")});
  CHECK(is_subadditive(r).ok);
  CHECK(classify(r).verdict == RhoClass::not_poset);
}

TEST_CASE("subadditivity failure with witness") {
  auto b = chain(2);
  auto r = table_rho(&b, 3, {{0, 1, 1}});  // rho(0,1)=1, rho(0,2)=0, rho(1,2)=0
  CHECK(is_transitive(r).ok);
  auto v = is_subadditive(r);
  CHECK_FALSE(v.ok);
  CHECK(v.witness == std::array<CnfOrdinal, 3>{O("0"), O("1"), O("2")});
  auto cls = classify(r);
  CHECK(cls.verdict == RhoClass::poset);
  REQUIRE(cls.direct);
  CHECK_FALSE(cls.direct->join_total);  // the direct route must also fail to find joins
  CHECK(cls.agree);
}

TEST_CASE("d_set contents") {
  auto b = chain(3);
  auto constant = table_rho(&b, 4, {});
  CHECK(d_set(constant, O("3"), 0).size() == 3);  // everything below
  auto r = table_rho(&b, 4, {{1, 3, 2}});
  auto d0 = d_set(r, O("3"), 0);
  CHECK(d0 == std::vector<CnfOrdinal>{O("0"), O("2")});  // eta=1 excluded at p=0
  auto d2 = d_set(r, O("3"), 2);
  CHECK(d2.size() == 3);
}

TEST_CASE("induced join formula matches the brute-force least upper bound scan") {
  auto b = diamond22();
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 40; ++trial) {
    // random transitive+subadditive map found by rejection
    std::vector<int> t(16, 0);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) t[i * 4 + j] = static_cast<int>(rng() % 4);
    TableRho r(&b, 4, std::move(t));
    if (!is_transitive(r).ok || !is_subadditive(r).ok) continue;
    auto carrier = induced_carrier_semilattice(r);
    InducedOrder<TableRho> ord{&r};
    std::vector<InducedPoint<TableRho>> pts;
    for (const auto& a : r.support())
      for (int p : r.codomain().values()) pts.push_back({a, p});
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = 0; j < pts.size(); ++j) {
        auto formula = induced_join(r, pts[i], pts[j]);
        int scan = carrier.join(static_cast<int>(i), static_cast<int>(j));
        CHECK(ord.leq(pts[scan], formula));
        CHECK(ord.leq(formula, pts[scan]));
      }
  }
}

TEST_CASE("induced join special cases") {
  auto b = diamond22();
  auto constant = table_rho(&b, 3, {});
  // product join
  auto j = induced_join(constant, {O("1"), 1}, {O("2"), 2});
  CHECK(j.first == O("2"));
  CHECK(j.second == b.join(1, 2));
  auto r = table_rho(&b, 3, {{0, 2, 2}});
  auto j2 = induced_join(r, {O("0"), 0}, {O("2"), 0});
  CHECK(j2.first == O("2"));
  CHECK(j2.second == 2);  // bottom v bottom v rho(0,2)
}

TEST_CASE("induced meet formula and scan agree on lattice-classified maps") {
  auto b = diamond22();
  std::mt19937_64 rng(9);
  int tested = 0;
  for (int trial = 0; trial < 200 && tested < 15; ++trial) {
    std::vector<int> t(16, 0);
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) t[i * 4 + j] = static_cast<int>(rng() % 4);
    // keep the zero row to allow lattices
    for (int j = 1; j < 4; ++j) t[0 * 4 + j] = 0;
    TableRho r(&b, 4, std::move(t));
    if (classify(r).verdict != RhoClass::lattice) continue;
    ++tested;
    auto carrier = induced_carrier_semilattice(r);
    std::vector<InducedPoint<TableRho>> pts;
    for (const auto& a : r.support())
      for (int p : r.codomain().values()) pts.push_back({a, p});
    InducedOrder<TableRho> ord{&r};
    for (size_t i = 0; i < pts.size(); ++i)
      for (size_t j = 0; j < pts.size(); ++j) {
        auto formula = induced_meet(r, pts[i], pts[j]);
        auto scan = meet(carrier, static_cast<int>(i), static_cast<int>(j));
        REQUIRE(scan);
        CHECK(ord.leq(pts[*scan], formula));
        CHECK(ord.leq(formula, pts[*scan]));
      }
  }
  CHECK(tested > 0);
}

TEST_CASE("induced meet degenerate cases") {
  auto b = diamond22();
  auto constant = table_rho(&b, 3, {});
  auto m = induced_meet(constant, {O("2"), 1}, {O("2"), 2});
  CHECK(m.first == O("2"));
  CHECK(m.second == 0);  // meet in the diamond
  auto m2 = induced_meet(constant, {O("1"), 1}, {O("2"), 2});
  CHECK(m2.first == O("1"));
  // a finite codomain with a bottom is always a lattice, so the only
  // rejection at this level is a missing least element
  auto vt = vee_top();
  CHECK_THROWS_AS(FiniteCodomain(&vt), Error);
}

TEST_CASE("has_least detects a nonzero first row") {
  auto b = chain(2);
  auto r = table_rho(&b, 2, {{0, 1, 1}});
  CHECK_FALSE(has_least(r));
  InducedOrder<TableRho> ord{&r};
  CHECK_FALSE(ord.leq({O("0"), 0}, {O("1"), 0}));
}

TEST_CASE("least-element lemma: all three conditions agree on enumerated maps") {
  auto b = chain(2);
  for (int gamma : {2, 3}) {
    for_all_rho(b, gamma, [&](const TableRho& r) {
      const auto& cod = r.codomain();
      bool zero_row = true;
      for (const auto& a : r.support())
        if (!cod.leq(r.at(O("0"), a), cod.bottom())) zero_row = false;
      InducedOrder<TableRho> ord{&r};
      std::vector<InducedPoint<TableRho>> pts;
      for (const auto& a : r.support())
        for (int p : cod.values()) pts.push_back({a, p});
      bool zero_bottom = true;
      for (const auto& y : pts)
        if (!ord.leq({O("0"), 0}, y)) zero_bottom = false;
      bool any_bottom = false;
      for (const auto& x : pts) {
        bool below_all = true;
        for (const auto& y : pts)
          if (!ord.leq(x, y)) below_all = false;
        if (below_all) any_bottom = true;
      }
      CHECK(zero_row == zero_bottom);
      CHECK(zero_bottom == any_bottom);
    });
  }
}

TEST_CASE("trichotomy: rho-side criteria match direct testing over a full enumeration") {
  // this is the gamma <= 3, |B| <= 3 slice; the acceptance suite runs the
  // full family
  for (int gamma : {2, 3}) {
    for (const auto& b : {chain(2), chain(3)}) {
      for_all_rho(b, gamma, [&](const TableRho& r) {
        auto cls = classify(r);
        REQUIRE(cls.direct);
        CHECK(cls.agree);
        if (cls.verdict == RhoClass::join_semilattice || cls.verdict == RhoClass::lattice) {
          REQUIRE(cls.quasi_product);
          CHECK(*cls.quasi_product);
        }
      });
    }
  }
}

TEST_CASE("lattice verdict yields closed height sets") {
  auto b = diamond22();
  auto r = table_rho(&b, 4, {{1, 2, 1}, {1, 3, 1}, {2, 3, 0}});
  auto cls = classify(r);
  if (cls.verdict == RhoClass::lattice) {
    std::vector<InducedPoint<TableRho>> pts;
    for (const auto& a : r.support())
      for (int p : r.codomain().values()) pts.push_back({a, p});
    InducedOrder<TableRho> ord{&r};
    for (const auto& x : pts) {
      std::vector<CnfOrdinal> hts;
      for (const auto& y : pts)
        if (ord.leq(y, x)) hts.push_back(y.first);
      std::sort(hts.begin(), hts.end());
      hts.erase(std::unique(hts.begin(), hts.end()), hts.end());
      auto d = d_set(r, x.first, x.second);
      d.push_back(x.first);
      std::sort(d.begin(), d.end());
      CHECK(hts == d);
    }
  }
}

TEST_CASE("free codomains induce free carriers") {
  // when B is MJ(n)-free and rho has both triangle properties, the carrier is
  // MJ(n+1)-free
  for (const auto& b : {chain(3), diamond22()}) {
    int n = least_freeness_index(b);
    for_all_rho(b, 3, [&](const TableRho& r) {
      if (!is_transitive(r).ok || !is_subadditive(r).ok) return;
      auto carrier = induced_carrier_semilattice(r);
      CHECK(is_mj_free(carrier, n + 1));
    });
  }
}
