#include <catch2/catch_amalgamated.hpp>

#include "ladder/ordinal.hpp"

using namespace ladder;

namespace {
CnfOrdinal O(const std::string& s) { return CnfOrdinal::parse(s); }
}  // namespace

TEST_CASE("ordinal string syntax round-trips") {
  for (const char* s : {"0", "1", "7", "w", "w*4", "w+1", "w^3*2+w*4+7", "w^2", "w^2+w*2+3"}) {
    CHECK(CnfOrdinal::parse(s).to_string() == s);
  }
  CHECK_THROWS_AS(CnfOrdinal::parse("w^4"), Error);      // exponent at bound K=4
  CHECK_THROWS_AS(CnfOrdinal::parse("w*0"), Error);      // zero coefficient
  CHECK_THROWS_AS(CnfOrdinal::parse("1+w"), Error);      // ascending exponents
  CHECK_THROWS_AS(CnfOrdinal::parse(""), Error);
  CHECK(CnfOrdinal::parse("w^5", 6).to_string() == "w^5");
}

TEST_CASE("comparison is the ordinal order") {
  CHECK(O("w+1") > O("w"));
  CHECK(O("w") > O("1000"));
  CHECK(O("w^2") > O("w*1000+999"));
  CHECK(O("w*2") > O("w+5"));
  CHECK(O("3") < O("5"));
  CHECK(O("w^3") == O("w^3"));
}

TEST_CASE("addition absorbs on the left") {
  CHECK(O("1").add(O("w")) == O("w"));
  CHECK(O("w").add(O("1")) == O("w+1"));
  CHECK(O("w*2+3").add(O("w^2")) == O("w^2"));
  CHECK(O("w^2").add(O("w*2+3")) == O("w^2+w*2+3"));
  CHECK(O("w+3").add(O("w")) == O("w*2"));
  // associativity on a small sample
  std::vector<CnfOrdinal> xs = {O("0"), O("1"), O("w"), O("w+2"), O("w^2"), O("w^2+w")};
  for (const auto& a : xs)
    for (const auto& b : xs)
      for (const auto& c : xs) CHECK(a.add(b).add(c) == a.add(b.add(c)));
  // a < a + b for b > 0
  for (const auto& a : xs)
    for (const auto& b : xs)
      if (!b.is_zero()) CHECK(a < a.add(b));
}

TEST_CASE("left subtraction inverts addition") {
  std::vector<CnfOrdinal> xs = {O("0"), O("1"), O("5"), O("w"), O("w+2"), O("w*3"),
                                O("w^2"), O("w^2+w*2+1"), O("w^3")};
  for (const auto& a : xs)
    for (const auto& b : xs) {
      CnfOrdinal s = a.add(b);
      CHECK(a.add(s.subtract_left(a)) == s);
    }
  CHECK(O("w*2").subtract_left(O("w")) == O("w"));
  CHECK(O("w").subtract_left(O("3")) == O("w"));
  CHECK_THROWS_AS(O("3").subtract_left(O("w")), Error);
}

TEST_CASE("successor and predecessor") {
  CHECK(O("w").successor() == O("w+1"));
  CHECK(O("w+1").predecessor() == O("w"));
  CHECK(O("5").predecessor() == O("4"));
  CHECK_THROWS_AS(O("w").predecessor(), Error);
  CHECK_THROWS_AS(O("0").predecessor(), Error);
}

TEST_CASE("cofinality classes") {
  CHECK(cofinality_class(O("0")) == CofinalityClass::zero);
  CHECK(cofinality_class(O("w*3+5")) == CofinalityClass::successor);
  CHECK(cofinality_class(O("w^2")) == CofinalityClass::omega);
  CHECK(cofinality_class(O("w")) == CofinalityClass::omega);
}

TEST_CASE("omega limits of patterns") {
  // k -> k has sup w
  CHECK(OmegaPattern{O("0"), 0}.limit() == O("w"));
  // k -> w + k has sup w*2
  CHECK(OmegaPattern{O("w"), 0}.limit() == O("w*2"));
  // k -> w*k has sup w^2
  CHECK(OmegaPattern{O("0"), 1}.limit() == O("w^2"));
  CHECK(OmegaPattern{O("w*3"), 0}.limit() == O("w*4"));
  CHECK(OmegaPattern{O("w^2+w*2+5"), 0}.limit() == O("w^2+w*3"));
  // limit exceeds every element; elements strictly increase
  OmegaPattern p{O("w"), 1};
  for (std::uint64_t k = 1; k < 6; ++k) {
    CHECK(p.element(k) < p.limit());
    CHECK(p.element(k) < p.element(k + 1));
  }
  CHECK_THROWS_AS((OmegaPattern{O("w^3"), 3}.limit()), Error);
}

TEST_CASE("pattern limits are least upper bounds over sampled candidates") {
  std::vector<OmegaPattern> pats = {{O("0"), 0}, {O("w"), 0}, {O("0"), 1}, {O("w^2+w"), 0}};
  for (const auto& p : pats) {
    CnfOrdinal lim = p.limit();
    // sampled universe candidates strictly below the limit
    std::vector<CnfOrdinal> candidates = {p.element(1), p.element(3).successor(),
                                          p.element(7), p.element(2).add(O("1"))};
    for (const auto& c : candidates) {
      if (!(c < lim)) continue;
      bool dominated = false;
      for (std::uint64_t k = 1; k <= 16 && !dominated; ++k)
        if (c < p.element(k)) dominated = true;
      CHECK(dominated);  // nothing below the limit bounds the whole tail
    }
  }
}

TEST_CASE("pattern membership") {
  OmegaPattern p{O("w"), 0};  // w+1, w+2, ...
  CHECK(p.index_of(O("w+3")) == 3);
  CHECK_FALSE(p.index_of(O("w")).has_value());
  CHECK_FALSE(p.index_of(O("w*2")).has_value());
  OmegaPattern q{O("0"), 1};  // w, w*2, ...
  CHECK(q.index_of(O("w*5")) == 5);
  CHECK_FALSE(q.index_of(O("w*5+1")).has_value());
}

TEST_CASE("fundamental patterns of limits") {
  CHECK(fundamental_pattern(O("w")) == OmegaPattern{O("0"), 0});
  CHECK(fundamental_pattern(O("w^2")) == OmegaPattern{O("0"), 1});
  CHECK(fundamental_pattern(O("w^2+w")) == OmegaPattern{O("w^2"), 0});
  CHECK(fundamental_pattern(O("w*3")) == OmegaPattern{O("w*2"), 0});
  CHECK_THROWS_AS(fundamental_pattern(O("5")), Error);
}

TEST_CASE("certified sup of stable-difference probes") {
  std::vector<CnfOrdinal> nat = {O("1"), O("2"), O("3"), O("4")};
  CHECK(certified_sup(nat) == O("w"));
  std::vector<CnfOrdinal> wk = {O("w"), O("w*2"), O("w*3")};
  CHECK(certified_sup(wk) == O("w^2"));
  std::vector<CnfOrdinal> irregular = {O("1"), O("2"), O("4")};
  CHECK_FALSE(certified_sup(irregular).has_value());
  std::vector<CnfOrdinal> flat = {O("1"), O("1")};
  CHECK_FALSE(certified_sup(flat).has_value());
}

TEST_CASE("limit points need certificates") {
  std::vector<CnfOrdinal> universe = {O("5"), O("w"), O("w*2"), O("w^2")};
  // S = {1..10}: w qualifies via the detected pattern
  std::vector<CnfOrdinal> elems;
  for (int i = 1; i <= 10; ++i) elems.push_back(CnfOrdinal::nat(i));
  auto lp = limit_points(elems, {}, universe);
  REQUIRE(lp.size() == 1);
  CHECK(lp[0].beta == O("w"));
  CHECK(lp[0].certificate.limit() == O("w"));

  // S = {w*k : k <= 5}: no certified point at or below w*5; tail certifies w^2
  std::vector<CnfOrdinal> wks;
  for (int k = 1; k <= 5; ++k) wks.push_back(O("w").add(CnfOrdinal::zero()).add(CnfOrdinal::nat(0)));
  wks.clear();
  for (int k = 1; k <= 5; ++k) wks.push_back(CnfOrdinal::omega_power(1, k));
  auto lp2 = limit_points(wks, {}, {O("w*5")});
  CHECK(lp2.empty());
  auto lp3 = limit_points({}, {OmegaPattern{O("0"), 1}}, universe);
  REQUIRE(lp3.size() == 1);
  CHECK(lp3[0].beta == O("w^2"));

  // a finite set with too-short probes certifies nothing
  auto lp4 = limit_points({O("1")}, {}, universe);
  CHECK(lp4.empty());
}
