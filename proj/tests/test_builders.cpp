#include <catch2/catch_amalgamated.hpp>

#include "ladder/builders.hpp"
#include "ladder/verify.hpp"

using namespace ladder;

namespace {

CnfOrdinal O(const std::string& s) { return CnfOrdinal::parse(s); }

LadderPoint pt(std::initializer_list<const char*> coords) {
  LadderPoint p;
  for (const char* c : coords) p.coords.push_back(CnfOrdinal::parse(c));
  return p;
}

std::vector<std::pair<CnfOrdinal, CnfOrdinal>> milestone_requests(
    const std::vector<std::string>& bases, int offsets,
    const std::vector<std::string>& extra = {}) {
  std::vector<CnfOrdinal> pts;
  for (const auto& b : bases)
    for (int k = 0; k < offsets; ++k) pts.push_back(O(b).add(CnfOrdinal::nat(k)));
  for (const auto& e : extra) pts.push_back(O(e));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::vector<std::pair<CnfOrdinal, CnfOrdinal>> out;
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) out.push_back({pts[i], pts[j]});
  return out;
}

}  // namespace

TEST_CASE("semiladder build over the omega chain at bound w*3") {
  auto chain = StagedLadder::chain(O("w"));
  chain->prefill_chain(64);
  auto squares = canonical_ladder_system(O("w*3"));
  auto requests = milestone_requests({"0", "w", "w*2"}, 6);
  REQUIRE(requests.size() >= 150);
  auto build = build_semiladder_rho(O("w*3"), chain, squares, requests);

  // frozen values computed by hand from the recursion
  CHECK(build.rho.at(O("3"), O("w")) == pt({"2"}));
  CHECK(build.rho.at(O("w+4"), O("w*2")) == pt({"3"}));
  CHECK(build.rho.at(O("0"), O("w*2+5")) == pt({"0"}));
  CHECK(build.rho.at(O("2"), O("5")) == pt({"0"}));

  auto report = verify_claims(build.rho, BuildRoute::semiladder);
  for (const auto& r : report.results) {
    INFO(r.name << (r.witnesses.empty() ? "" : ": " + r.witnesses[0]));
    CHECK(r.ok);
  }
  CHECK(report.all_ok());
  // exhaustive triangle scans over the closed support
  std::uint64_t n = build.rho.support().size();
  std::uint64_t all_triples = n * (n - 1) * (n - 2) / 6;
  CHECK(report.find("transitivity")->checked == all_triples);
  CHECK(report.find("subadditivity")->checked == all_triples);
}

TEST_CASE("semiladder build is deterministic across runs") {
  auto make_dump = [] {
    auto chain = StagedLadder::chain(O("w"));
    chain->prefill_chain(64);
    auto squares = canonical_ladder_system(O("w*3"));
    auto build = build_semiladder_rho(O("w*3"), chain, squares,
                                      milestone_requests({"0", "w", "w*2"}, 6));
    std::string dump;
    for (const auto& [key, val] : build.rho.builder().memo())
      dump += key.first.to_string() + "|" + key.second.to_string() + "=" + val.to_string() + ";";
    return dump;
  };
  CHECK(make_dump() == make_dump());
}

TEST_CASE("ladder build at bound w^2 over full segments") {
  auto chain = StagedLadder::chain(O("w^2"));
  chain->prefill_chain(64);
  auto squares = full_segment_system(O("w^2"));
  auto requests = milestone_requests({"0", "w", "w*2"}, 6, {"w^2"});
  auto build = build_ladder_rho(O("w^2"), chain, squares, requests);

  // the p-vector of w^2 at the limit index w must come from case (iii)
  auto& gammas = build.rho.builder().gammas();
  REQUIRE(gammas.count(O("w^2")));
  const auto& rec = gammas.at(O("w^2"));
  REQUIRE(rec.pvec.count(O("w")));
  CHECK(rec.pvec.at(O("w")).case_label == "iii");
  CHECK(rec.pvec.at(O("w")).value == pt({"w"}));

  auto report = verify_claims(build.rho, BuildRoute::ladder);
  for (const auto& r : report.results) {
    INFO(r.name << (r.witnesses.empty() ? "" : ": " + r.witnesses[0]));
    CHECK(r.ok);
  }
  CHECK(report.all_ok());
  CHECK(report.find("meet-agreement")->checked >= 100);
  CHECK(report.find("ht-monotone")->checked > 0);
  CHECK(report.find("p-injective")->checked > 0);
}

TEST_CASE("flipping a rho value trips the verifier") {
  auto chain = StagedLadder::chain(O("w"));
  chain->prefill_chain(64);
  auto squares = canonical_ladder_system(O("w*3"));
  auto build = build_semiladder_rho(O("w*3"), chain, squares,
                                    milestone_requests({"0", "w", "w*2"}, 6));
  REQUIRE(verify_claims(build.rho, BuildRoute::semiladder).all_ok());
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    auto flipped = random_flip(build.rho, seed);
    CHECK_FALSE(verify_claims(flipped, BuildRoute::semiladder).all_ok());
  }
}

TEST_CASE("fragments of a stage-1 build are free at index 3") {
  auto chain = StagedLadder::chain(O("w"));
  chain->prefill_chain(64);
  auto squares = canonical_ladder_system(O("w*3"));
  auto build = build_semiladder_rho(O("w*3"), chain, squares,
                                    milestone_requests({"0", "w", "w*2"}, 6));
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    auto frag = fragment_semilattice(build.rho, seed);
    CHECK(is_mj_free(frag, 3));
    CHECK(is_well_founded(frag));
    CHECK(breadth(frag).n <= 2);
  }
}

TEST_CASE("semiladder route over full segments exercises the fresh limit-index branch") {
  auto chain = StagedLadder::chain(O("w^2"));
  chain->prefill_chain(64);
  auto squares = full_segment_system(O("w^2"));
  auto build = build_semiladder_rho(O("w^2"), chain, squares,
                                    milestone_requests({"0", "w", "w*2"}, 4), 1, 8);
  const auto& rec = build.rho.builder().gammas().at(O("w*2"));
  REQUIRE(rec.pvec.count(O("w")));
  CHECK(rec.pvec.at(O("w")).case_label == "iii");
  // enumeration-least fresh point past the canonical cone {p(0)..p(8)}
  CHECK(rec.pvec.at(O("w")).value == pt({"9"}));
  auto report = verify_claims(build.rho, BuildRoute::semiladder);
  for (const auto& r : report.results) {
    INFO(r.name << (r.witnesses.empty() ? "" : ": " + r.witnesses[0]));
    CHECK(r.ok);
  }
}

TEST_CASE("too-shallow probes cannot certify a liminf") {
  auto chain = StagedLadder::chain(O("w^2"));
  chain->prefill_chain(64);
  auto squares = full_segment_system(O("w^2"));
  bool caught = false;
  try {
    build_ladder_rho(O("w^2"), chain, squares, {{O("w"), O("w*2")}}, 1, /*probe_depth=*/1);
  } catch (const Error& e) {
    caught = e.code() == Errc::UncertifiedLimit;
  }
  CHECK(caught);
}

TEST_CASE("refusals: small-class limits without sequences, ladder route with small class") {
  auto chain = StagedLadder::chain(O("w"));
  auto squares = canonical_ladder_system(O("w*3"));
  squares.override_oracle(O("w"), {CofClass::small, 1});
  {
    auto builder = std::make_shared<RhoBuilder>(
        BuildConfig{BuildRoute::semiladder, O("w*3"), 1, 8}, chain, squares);
    CHECK_THROWS_MATCHES(builder->rho(O("3"), O("w")), Error,
                         Catch::Matchers::MessageMatches(
                             Catch::Matchers::ContainsSubstring("UncertifiedLimit")));
  }
  {
    auto builder = std::make_shared<RhoBuilder>(BuildConfig{BuildRoute::ladder, O("w*3"), 1, 8},
                                                chain, squares);
    CHECK_THROWS_MATCHES(
        builder->rho(O("3"), O("w")), Error,
        Catch::Matchers::MessageMatches(Catch::Matchers::ContainsSubstring("large class")));
  }
}

TEST_CASE("small-class limits with supplied sequences build and refuse past the end") {
  auto chain = StagedLadder::chain(O("w"));
  chain->prefill_chain(64);
  auto squares = canonical_ladder_system(O("w*2"));
  squares.override_oracle(O("w"), {CofClass::small, 2});
  squares.set_small_seq(O("w"), {O("1"), O("3"), O("5")});
  auto builder = std::make_shared<RhoBuilder>(
      BuildConfig{BuildRoute::semiladder, O("w*2"), 1, 8}, chain, squares);
  CHECK(builder->rho(O("0"), O("w")) == pt({"0"}));
  auto v = builder->rho(O("2"), O("w"));
  // p_w is the least upper bound of the rho values over the sequence with a
  // materialized down-set of size >= 2
  const auto& rec = builder->gammas().at(O("w"));
  REQUIRE(rec.case1_p);
  CHECK(builder->codomain().leq(*rec.case1_p, v));
  CHECK_THROWS_MATCHES(builder->rho(O("7"), O("w")), Error,
                       Catch::Matchers::MessageMatches(
                           Catch::Matchers::ContainsSubstring("not cofinal")));
}

TEST_CASE("iterate_stages builds a two-stage tower with free fragments") {
  std::vector<StagePlan> plans;
  plans.push_back({O("w*2"), canonical_ladder_system(O("w*2")),
                   milestone_requests({"0", "w"}, 5)});
  plans.push_back({O("w*2"), canonical_ladder_system(O("w*2")),
                   milestone_requests({"0", "w"}, 5)});
  auto outcomes = iterate_stages(BuildRoute::semiladder, O("w"), plans);
  REQUIRE(outcomes.size() == 2);
  CHECK(outcomes[0].ladder->stage() == 1);
  CHECK(outcomes[1].ladder->stage() == 2);
  for (const auto& o : outcomes) {
    CHECK(o.claims.all_ok());
    CHECK(o.fragments_free);
  }
  CHECK(outcomes[0].fragment_freeness_index == 3);
  CHECK(outcomes[1].fragment_freeness_index == 4);
}

TEST_CASE("ladder tower: stage-2 lattice build") {
  std::vector<StagePlan> plans;
  plans.push_back({O("w*2"), full_segment_system(O("w*2")), milestone_requests({"0", "w"}, 4)});
  plans.push_back({O("w*2"), full_segment_system(O("w*2")), milestone_requests({"0", "w"}, 4)});
  auto outcomes = iterate_stages(BuildRoute::ladder, O("w*2"), plans);
  REQUIRE(outcomes.size() == 2);
  for (const auto& o : outcomes) {
    INFO("stage " << o.ladder->stage());
    CHECK(o.claims.all_ok());
    CHECK(o.fragments_free);
    CHECK(o.ladder->is_lattice_codomain());
  }
}

TEST_CASE("stage counts beyond the configured maximum are refused") {
  std::vector<StagePlan> plans(4, {O("w"), canonical_ladder_system(O("w")), {}});
  CHECK_THROWS_AS(iterate_stages(BuildRoute::semiladder, O("w"), plans), Error);
}
