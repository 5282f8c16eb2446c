#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ladder/builders.hpp"
#include "ladder/common.hpp"
#include "ladder/semilattice.hpp"
#include "ladder/squares.hpp"
#include "ladder/sweeps.hpp"
#include "ladder/verify.hpp"

namespace ladder {

using nlohmann::json;

// ---------------------------------------------------------------- posets

/** {"elements": [names...], "leq": [[i,j],...]} listing the full relation,
    or just the covers with "covers": true. The diagonal is implied. */
inline Poset poset_from_json(const json& j) {
  if (!j.contains("elements") || !j["elements"].is_array())
    fail(Errc::InputError, "poset json needs an \"elements\" array");
  std::vector<std::string> labels = j["elements"].get<std::vector<std::string>>();
  int n = static_cast<int>(labels.size());
  std::vector<std::pair<int, int>> pairs;
  for (const auto& e : j.value("leq", json::array())) {
    if (!e.is_array() || e.size() != 2) fail(Errc::InputError, "leq entries are [i,j] pairs");
    pairs.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  if (j.value("covers", false)) return Poset::from_covers(n, pairs, std::move(labels));
  std::vector<bool> leq(static_cast<size_t>(n) * n, false);
  for (int i = 0; i < n; ++i) leq[static_cast<size_t>(i) * n + i] = true;
  for (auto [a, b] : pairs) {
    if (a < 0 || b < 0 || a >= n || b >= n) fail(Errc::InputError, "leq index out of range");
    leq[static_cast<size_t>(a) * n + b] = true;
  }
  return Poset::from_leq(n, leq, std::move(labels));
}

inline json poset_to_json(const Poset& p) {
  json j;
  j["elements"] = p.labels();
  json pairs = json::array();
  for (int a = 0; a < p.size(); ++a)
    for (int b = 0; b < p.size(); ++b)
      if (a != b && p.leq(a, b)) pairs.push_back(json::array({a, b}));
  j["leq"] = pairs;
  return j;
}

inline JoinSemilattice semilattice_from_json(const json& j) {
  return JoinSemilattice::validate(poset_from_json(j));
}

/** Hasse diagram: cover edges only, ranks by longest-chain height. */
inline std::string to_dot(const Poset& p, const std::string& name = "poset") {
  std::ostringstream os;
  os << "digraph \"" << name << "\" {\n  rankdir=BT;\n  node [shape=circle];\n";
  int max_h = 0;
  std::vector<int> h(p.size());
  for (int x = 0; x < p.size(); ++x) {
    h[x] = p.height(x);
    max_h = std::max(max_h, h[x]);
  }
  for (int level = 0; level <= max_h; ++level) {
    os << "  { rank=same;";
    for (int x = 0; x < p.size(); ++x)
      if (h[x] == level) os << " \"" << p.label(x) << "\";";
    os << " }\n";
  }
  for (int x = 0; x < p.size(); ++x)
    for (int q : p.lower_covers(x))
      os << "  \"" << p.label(q) << "\" -> \"" << p.label(x) << "\";\n";
  os << "}\n";
  return os.str();
}

// ---------------------------------------------------------------- squares

inline json club_to_json(const ClubSet& c) {
  json j;
  if (c.kind == ClubSet::Kind::full) {
    j["kind"] = "full";
    if (!c.removed.empty()) {
      json rem = json::array();
      for (const auto& r : c.removed) rem.push_back(r.to_string());
      j["removed"] = rem;
    }
  } else {
    j["kind"] = "pattern";
    if (c.tail) {
      j["prefix"] = c.tail->prefix.to_string();
      j["step"] = c.tail->step_exp;
    }
    if (!c.explicit_elems.empty()) {
      json ex = json::array();
      for (const auto& e : c.explicit_elems) ex.push_back(e.to_string());
      j["explicit"] = ex;
    }
  }
  return j;
}

inline ClubSet club_from_json(const json& j, int bound_exp) {
  std::string kind = j.value("kind", "pattern");
  if (kind == "full") {
    std::vector<CnfOrdinal> removed;
    for (const auto& r : j.value("removed", json::array()))
      removed.push_back(CnfOrdinal::parse(r.get<std::string>(), bound_exp));
    return ClubSet::full_segment(std::move(removed));
  }
  if (!j.contains("prefix")) fail(Errc::InputError, "pattern club needs a prefix");
  OmegaPattern tail{CnfOrdinal::parse(j["prefix"].get<std::string>(), bound_exp),
                    j.value("step", 0)};
  std::vector<CnfOrdinal> explicit_elems;
  for (const auto& e : j.value("explicit", json::array()))
    explicit_elems.push_back(CnfOrdinal::parse(e.get<std::string>(), bound_exp));
  return ClubSet::from_pattern(tail, std::move(explicit_elems));
}

/** {"bound": "...", "otp_cap": "omega"|"unbounded", "default":
    "canonical"|"full"|"none", "sequences": [...], "oracle": [...],
    "small_seqs": [...]} */
inline CSequenceSystem squares_from_json(const json& j, int bound_exp = kDefaultExponentBound) {
  if (!j.contains("bound")) fail(Errc::InputError, "square json needs a bound");
  CnfOrdinal bound = CnfOrdinal::parse(j["bound"].get<std::string>(), bound_exp);
  std::string cap = j.value("otp_cap", "omega");
  std::string def = j.value("default", "canonical");
  CSequenceSystem s(bound, cap == "unbounded" ? CSequenceSystem::OtpCap::unbounded
                                              : CSequenceSystem::OtpCap::omega);
  if (def == "canonical") {
    s = canonical_ladder_system(bound);
  } else if (def == "full") {
    s = full_segment_system(bound);
  } else if (def != "none") {
    fail(Errc::InputError, "unknown default square provider '" + def + "'");
  }
  if (cap == "unbounded" && def == "canonical") {
    // explicit cap overrides the provider's
    CSequenceSystem t(bound, CSequenceSystem::OtpCap::unbounded);
    t.set_provider([](const CnfOrdinal& g) { return ClubSet::from_pattern(fundamental_pattern(g)); });
    t.set_oracle([](const CnfOrdinal&) { return CofInfo{CofClass::large, 1}; });
    s = std::move(t);
  }
  s.set_name(j.value("name", def));
  for (const auto& entry : j.value("sequences", json::array())) {
    CnfOrdinal gamma = CnfOrdinal::parse(entry.at("gamma").get<std::string>(), bound_exp);
    s.override_club(gamma, club_from_json(entry, bound_exp));
  }
  for (const auto& entry : j.value("oracle", json::array())) {
    CnfOrdinal gamma = CnfOrdinal::parse(entry.at("gamma").get<std::string>(), bound_exp);
    CofInfo info;
    info.cls = entry.value("class", "large") == std::string("small") ? CofClass::small
                                                                     : CofClass::large;
    info.floor = entry.value("floor", 1);
    s.override_oracle(gamma, info);
  }
  for (const auto& entry : j.value("small_seqs", json::array())) {
    CnfOrdinal gamma = CnfOrdinal::parse(entry.at("gamma").get<std::string>(), bound_exp);
    std::vector<CnfOrdinal> seq;
    for (const auto& e : entry.at("seq"))
      seq.push_back(CnfOrdinal::parse(e.get<std::string>(), bound_exp));
    s.set_small_seq(gamma, std::move(seq));
  }
  return s;
}

inline json square_report_to_json(const SquareReport& r) {
  json j;
  j["ok"] = r.ok;
  j["limits_checked"] = r.limits_checked;
  j["coherence_pairs_checked"] = r.coherence_pairs_checked;
  json vs = json::array();
  for (const auto& v : r.violations) {
    json e;
    e["clause"] = v.clause;
    e["gamma"] = v.gamma.to_string();
    e["beta"] = v.beta.to_string();
    e["detail"] = v.detail;
    vs.push_back(e);
  }
  j["violations"] = vs;
  return j;
}

// ---------------------------------------------------------------- rho dumps

inline json rho_dump_to_json(const BuiltRho& rho) {
  json pairs = json::array();
  for (const auto& [key, val] : rho.builder().memo()) {
    json e;
    e["a"] = key.first.to_string();
    e["b"] = key.second.to_string();
    e["value"] = val.to_string();
    pairs.push_back(e);
  }
  json j;
  j["pairs"] = pairs;
  json support = json::array();
  for (const auto& s : rho.support()) support.push_back(s.to_string());
  j["support"] = support;
  return j;
}

inline json trace_to_json(const BuiltRho& rho) {
  const RhoBuilder& b = rho.builder();
  json j;
  j["route"] = route_name(b.config().route);
  j["bound"] = b.config().bound.to_string();
  j["bound_exponent"] = b.config().bound.bound();
  j["base_bound"] = b.codomain().bound().to_string();
  j["base_stage"] = b.codomain().stage();
  j["seed"] = b.config().seed;
  j["probe_depth"] = b.config().probe_depth;
  j["squares"] = b.squares().name();
  json reqs = json::array();
  for (const auto& [a, bb] : b.requests())
    reqs.push_back(json::array({a.to_string(), bb.to_string()}));
  j["requests"] = reqs;
  json gammas = json::array();
  for (const auto& [gamma, rec] : b.gammas()) {
    json g;
    g["gamma"] = gamma.to_string();
    g["case"] = rec.case_label;
    if (!rec.case1_seq.empty()) {
      json seq = json::array();
      for (const auto& s : rec.case1_seq) seq.push_back(s.to_string());
      g["sequence"] = seq;
    }
    if (rec.case1_p) g["p"] = rec.case1_p->to_string();
    if (!rec.pvec.empty()) {
      json pv = json::array();
      for (const auto& [nu, ir] : rec.pvec) {
        json e;
        e["nu"] = nu.to_string();
        e["case"] = ir.case_label;
        e["theta"] = ir.theta.to_string();
        e["value"] = ir.value.to_string();
        pv.push_back(e);
      }
      g["pvec"] = pv;
    }
    if (!rec.mu_served.empty()) {
      json mu = json::array();
      for (const auto& [alpha, nu] : rec.mu_served)
        mu.push_back(json::array({alpha.to_string(), nu.to_string()}));
      g["mu"] = mu;
    }
    gammas.push_back(g);
  }
  j["gammas"] = gammas;
  return j;
}

/** Rebuilds a map from its own trace (stage-0 base, named square systems)
    and reports whether every dumped rho value reproduces identically. */
inline bool replay_reproduces(const json& trace, const json& dump) {
  int bound_exp = trace.value("bound_exponent", kDefaultExponentBound);
  CnfOrdinal bound = CnfOrdinal::parse(trace.at("bound").get<std::string>(), bound_exp);
  CnfOrdinal base_bound = CnfOrdinal::parse(trace.at("base_bound").get<std::string>(), bound_exp);
  if (trace.value("base_stage", 0) != 0)
    fail(Errc::InputError, "replay supports stage-0 bases only");
  std::string sq = trace.at("squares").get<std::string>();
  CSequenceSystem squares = sq == "full" ? full_segment_system(bound)
                                         : canonical_ladder_system(bound);
  if (sq != "full" && sq != "canonical")
    fail(Errc::InputError, "replay needs a named square system, got '" + sq + "'");
  BuildRoute route = trace.at("route").get<std::string>() == "ladder" ? BuildRoute::ladder
                                                                      : BuildRoute::semiladder;
  std::vector<std::pair<CnfOrdinal, CnfOrdinal>> requests;
  for (const auto& e : trace.at("requests"))
    requests.push_back({CnfOrdinal::parse(e.at(0).get<std::string>(), bound_exp),
                        CnfOrdinal::parse(e.at(1).get<std::string>(), bound_exp)});
  auto chain = StagedLadder::chain(base_bound);
  chain->prefill_chain(64);
  auto build = run_build(route, bound, chain, squares, requests,
                         trace.value("seed", std::uint64_t{1}), trace.value("probe_depth", 8));
  for (const auto& e : dump.at("pairs")) {
    CnfOrdinal a = CnfOrdinal::parse(e.at("a").get<std::string>(), bound_exp);
    CnfOrdinal b = CnfOrdinal::parse(e.at("b").get<std::string>(), bound_exp);
    if (build.rho.at(a, b).to_string() != e.at("value").get<std::string>()) return false;
  }
  return true;
}

inline json claims_to_json(const ClaimsReport& r) {
  json j;
  j["level"] = r.level;
  j["ok"] = r.all_ok();
  j["d_bound_constant"] = r.d_bound_constant;
  json results = json::array();
  for (const auto& c : r.results) {
    json e;
    e["claim"] = c.name;
    e["checked"] = c.checked;
    e["ok"] = c.ok;
    if (!c.witnesses.empty()) e["witnesses"] = c.witnesses;
    results.push_back(e);
  }
  j["claims"] = results;
  return j;
}

inline json sweep_to_json(const SweepReport& r) {
  json j;
  j["sweep"] = r.name;
  j["instances"] = r.instances;
  j["discrepancies"] = r.discrepancies;
  j["ok"] = r.ok();
  if (!r.witnesses.empty()) j["witnesses"] = r.witnesses;
  return j;
}

// ---------------------------------------------------------------- files

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::InputError, "cannot read " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    fail(Errc::InputError, std::string("json parse error in ") + path + ": " + e.what());
  }
  return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) fail(Errc::InputError, "cannot write " + path);
  out << text;
}

/** Reports carry the tool version, the seed, and a hash of the effective
    config, so reruns are byte-identical and attributable. */
inline json report_envelope(const json& config, std::uint64_t seed) {
  json j;
  j["version"] = kVersion;
  j["seed"] = seed;
  std::ostringstream hash_src;
  hash_src << config.dump();
  std::ostringstream hex;
  hex << std::hex << fnv1a64(hash_src.str());
  j["config_hash"] = hex.str();
  return j;
}

}  // namespace ladder
