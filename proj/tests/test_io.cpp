#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"
#include "ladder/io.hpp"

using namespace ladder;
using namespace testutil;

namespace {
CnfOrdinal O(const std::string& s) { return CnfOrdinal::parse(s); }
}  // namespace

TEST_CASE("poset json round-trips through the full relation") {
  auto d = m3();
  json j = poset_to_json(d.order());
  auto back = semilattice_from_json(j);
  REQUIRE(back.size() == d.size());
  for (int x = 0; x < d.size(); ++x)
    for (int y = 0; y < d.size(); ++y) CHECK(back.leq(x, y) == d.leq(x, y));
}

TEST_CASE("cover-form json closes transitively") {
  json j;
  j["elements"] = {"0", "1", "2"};
  j["leq"] = json::array({json::array({0, 1}), json::array({1, 2})});
  j["covers"] = true;
  auto p = poset_from_json(j);
  CHECK(p.leq(0, 2));
  // without the flag the same pairs are an incomplete relation
  j.erase("covers");
  CHECK_THROWS_AS(poset_from_json(j), Error);
}

TEST_CASE("malformed poset json is rejected") {
  CHECK_THROWS_AS(poset_from_json(json::object()), Error);
  json bad;
  bad["elements"] = {"a"};
  bad["leq"] = json::array({json::array({0, 5})});
  CHECK_THROWS_AS(poset_from_json(bad), Error);
}

TEST_CASE("dot export lists cover edges and ranks") {
  auto dot = to_dot(m3().order(), "m3");
  CHECK(dot.find("\"bot\" -> \"a\"") != std::string::npos);
  CHECK(dot.find("\"a\" -> \"top\"") != std::string::npos);
  CHECK(dot.find("rank=same") != std::string::npos);
  // no transitive edge bot -> top
  CHECK(dot.find("\"bot\" -> \"top\"") == std::string::npos);
}

TEST_CASE("square systems round-trip through json") {
  json j;
  j["bound"] = "w^3";
  j["default"] = "canonical";
  j["sequences"] = json::array({json{{"gamma", "w^2"},
                                     {"kind", "pattern"},
                                     {"prefix", "w"},
                                     {"step", 1},
                                     {"explicit", json::array({"2", "5"})}}});
  j["oracle"] = json::array({json{{"gamma", "w"}, {"class", "small"}, {"floor", 2}}});
  j["small_seqs"] = json::array({json{{"gamma", "w"}, {"seq", json::array({"1", "4"})}}});
  auto s = squares_from_json(j);
  CHECK(s.bound() == O("w^3"));
  CHECK(s.cof_class(O("w")).cls == CofClass::small);
  CHECK(s.cof_class(O("w")).floor == 2);
  REQUIRE(s.small_seq(O("w")));
  CHECK(s.small_seq(O("w"))->size() == 2);
  auto club = s.at(O("w^2"));
  CHECK(club.explicit_elems.size() == 2);
  REQUIRE(club.tail);
  CHECK(club.tail->prefix == O("w"));
  // untouched limits come from the canonical provider
  auto other = s.at(O("w*2"));
  REQUIRE(other.tail);
  CHECK(*other.tail == OmegaPattern{O("w"), 0});
  // round trip the overridden club
  auto again = club_from_json(club_to_json(club), kDefaultExponentBound);
  CHECK(again.explicit_elems == club.explicit_elems);
  CHECK(again.tail == club.tail);
}

TEST_CASE("rho dumps are deterministic and replayable") {
  auto make = [] {
    auto chain = StagedLadder::chain(O("w"));
    chain->prefill_chain(64);
    auto squares = canonical_ladder_system(O("w*2"));
    std::vector<std::pair<CnfOrdinal, CnfOrdinal>> requests;
    for (int i = 0; i < 5; ++i)
      for (int j = i + 1; j <= 5; ++j)
        requests.push_back({O("w").add(CnfOrdinal::nat(i)), O("w").add(CnfOrdinal::nat(j))});
    requests.push_back({O("3"), O("w+4")});
    return build_semiladder_rho(O("w*2"), chain, squares, requests);
  };
  auto a = make();
  auto b = make();
  CHECK(rho_dump_to_json(a.rho).dump() == rho_dump_to_json(b.rho).dump());
  json trace = trace_to_json(a.rho);
  json dump = rho_dump_to_json(a.rho);
  CHECK(replay_reproduces(trace, dump));
}

TEST_CASE("report envelopes carry version, seed, and config hash") {
  json cfg{{"x", 1}};
  json env = report_envelope(cfg, 7);
  CHECK(env["version"] == kVersion);
  CHECK(env["seed"] == 7);
  CHECK(env["config_hash"].is_string());
  CHECK(env == report_envelope(cfg, 7));
}
