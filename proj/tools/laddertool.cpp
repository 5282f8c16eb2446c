// Batch front door: validate and measure structures, run the exhaustive
// sweeps, execute ladder builds, verify their claims, export diagrams.

#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ladder/gallery.hpp"
#include "ladder/io.hpp"

using namespace ladder;

namespace {

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case Errc::SizeGuard:
    case Errc::BoundExceeded:
    case Errc::FragmentExhausted:
    case Errc::UncertifiedLimit:
    case Errc::UncertifiedSupport:
      return 3;
    case Errc::PropertyViolation:
    case Errc::NotWellFormed:
    case Errc::CaseFourUnreachable:
      return 2;
    default:
      return 4;
  }
}

void emit(const json& report, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << report.dump(2) << "\n";
  } else {
    write_text_file(out_path, report.dump(2) + "\n");
  }
}

std::vector<CnfOrdinal> milestones_with_offsets(const json& spec, int bound_exp) {
  std::vector<CnfOrdinal> pts;
  int offsets = spec.value("offsets", 6);
  for (const auto& m : spec.value("milestones", json::array())) {
    CnfOrdinal base = CnfOrdinal::parse(m.get<std::string>(), bound_exp);
    for (int k = 0; k < offsets; ++k) pts.push_back(base.add(CnfOrdinal::nat(k, bound_exp)));
  }
  for (const auto& e : spec.value("extra", json::array()))
    pts.push_back(CnfOrdinal::parse(e.get<std::string>(), bound_exp));
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}

std::vector<std::pair<CnfOrdinal, CnfOrdinal>> requests_from_json(const json& spec,
                                                                  int bound_exp) {
  std::vector<std::pair<CnfOrdinal, CnfOrdinal>> out;
  if (spec.is_array()) {
    for (const auto& e : spec)
      out.push_back({CnfOrdinal::parse(e.at(0).get<std::string>(), bound_exp),
                     CnfOrdinal::parse(e.at(1).get<std::string>(), bound_exp)});
    return out;
  }
  auto pts = milestones_with_offsets(spec, bound_exp);
  for (size_t i = 0; i < pts.size(); ++i)
    for (size_t j = i + 1; j < pts.size(); ++j) out.push_back({pts[i], pts[j]});
  return out;
}

CSequenceSystem squares_from_spec(const json& spec, const CnfOrdinal& bound) {
  if (spec.is_string()) {
    std::string name = spec.get<std::string>();
    if (name == "canonical") return canonical_ladder_system(bound);
    if (name == "full") return full_segment_system(bound);
    // otherwise a path to a json file
    return squares_from_json(read_json_file(name), bound.bound());
  }
  return squares_from_json(spec, bound.bound());
}

int cmd_check(const std::string& input, const std::string& out, int max_degree) {
  json j = read_json_file(input);
  JoinSemilattice p = semilattice_from_json(j);
  json report = report_envelope(j, 0);
  report["elements"] = p.size();
  auto br = breadth(p);
  report["breadth"] = br.n;
  json witness = json::array();
  for (int x : br.witness) witness.push_back(p.label(x));
  report["breadth_witness"] = witness;
  auto lat = is_lattice(p);
  report["lattice"] = lat.ok;
  if (!lat.ok)
    report["lattice_witness"] =
        json::array({p.label(lat.witness.first), p.label(lat.witness.second)});
  report["least_freeness_index"] = least_freeness_index(p);
  json freeness = json::object();
  for (int n = 0; n <= max_degree; ++n)
    freeness[std::to_string(n)] = is_mj_free(p, n);
  report["mj_free"] = freeness;
  json covers = json::object();
  json coverings = json::object();
  for (int x = 0; x < p.size(); ++x) {
    covers[p.label(x)] = p.lower_covers(x).size();
    auto least = least_finite_lower_covering(p, x);
    json fam = json::array();
    for (const auto& ideal : least.ideals) {
      json carrier = json::array();
      for (int y : ideal.carrier) carrier.push_back(p.label(y));
      fam.push_back(carrier);
    }
    coverings[p.label(x)] = fam;
  }
  report["lower_cover_counts"] = covers;
  report["least_coverings"] = coverings;
  json ladder_degrees = json::object();
  for (int n = 0; n <= max_degree; ++n)
    ladder_degrees[std::to_string(n)] = is_n_ladder(p, n).ok;
  report["n_ladder"] = ladder_degrees;
  emit(report, out);
  return 0;
}

int cmd_construct(const std::string& config_path, const std::string& out_dir,
                  std::uint64_t seed_flag, int probe_depth_flag,
                  const std::string& bound_flag, int stage_flag) {
  json cfg = read_json_file(config_path);
  if (!bound_flag.empty()) cfg["bound"] = bound_flag;
  if (stage_flag > 0) cfg["stages"] = stage_flag;
  int bound_exp = cfg.value("bound_exponent", kDefaultExponentBound);
  CnfOrdinal bound = CnfOrdinal::parse(cfg.at("bound").get<std::string>(), bound_exp);
  BuildRoute route = cfg.value("kind", "semiladder") == std::string("ladder")
                         ? BuildRoute::ladder
                         : BuildRoute::semiladder;
  std::uint64_t seed = cfg.value("seed", seed_flag);
  int probe_depth = cfg.value("probe_depth", probe_depth_flag);
  json base_spec = cfg.value("base", json::object());
  CnfOrdinal base_bound = CnfOrdinal::parse(
      base_spec.value("bound", bound.to_string()), bound_exp);
  auto chain = StagedLadder::chain(base_bound);
  chain->prefill_chain(base_spec.value("prefill", 64));
  CSequenceSystem squares = squares_from_spec(cfg.value("squares", json("canonical")), bound);
  auto requests = requests_from_json(cfg.value("requests", json::object()), bound_exp);

  // validate the squares on the request points first
  std::vector<CnfOrdinal> support_probe;
  for (const auto& [a, b] : requests) {
    support_probe.push_back(a);
    support_probe.push_back(b);
  }
  std::sort(support_probe.begin(), support_probe.end());
  support_probe.erase(std::unique(support_probe.begin(), support_probe.end()),
                      support_probe.end());
  auto square_report = validate_square(squares, support_probe, probe_depth);

  json report = report_envelope(cfg, seed);
  report["squares"] = square_report_to_json(square_report);
  std::filesystem::path dir = out_dir.empty() ? "." : out_dir;
  std::filesystem::create_directories(dir);
  if (!square_report.ok) {
    report["ok"] = false;
    write_text_file((dir / "report.json").string(), report.dump(2) + "\n");
    std::cerr << "square-sequence validation failed\n";
    return 2;
  }

  int stages = cfg.value("stages", 1);
  std::vector<StagePlan> plans(static_cast<size_t>(stages), StagePlan{bound, squares, requests});
  auto outcomes = iterate_stages(route, base_bound, plans, seed, probe_depth);

  // rebuild the last stage's artifacts for the dumps
  std::shared_ptr<const StagedLadder> base = StagedLadder::chain(base_bound);
  const_cast<StagedLadder&>(*base).prefill_chain(base_spec.value("prefill", 64));
  json stage_reports = json::array();
  bool all_ok = true;
  for (size_t s = 0; s < outcomes.size(); ++s) {
    json e = claims_to_json(outcomes[s].claims);
    e["stage"] = outcomes[s].ladder->stage();
    e["fragments_free"] = outcomes[s].fragments_free;
    e["fragment_freeness_index"] = outcomes[s].fragment_freeness_index;
    stage_reports.push_back(e);
    if (!outcomes[s].claims.all_ok() || !outcomes[s].fragments_free) all_ok = false;
  }
  report["stages"] = stage_reports;
  report["ok"] = all_ok;

  // dump the first stage's map (the directly requested one)
  auto first = run_build(route, bound, base, squares, requests, seed, probe_depth);
  write_text_file((dir / "rho.json").string(), rho_dump_to_json(first.rho).dump(2) + "\n");
  write_text_file((dir / "trace.json").string(), trace_to_json(first.rho).dump(2) + "\n");
  auto frag = fragment_semilattice(first.rho, seed);
  write_text_file((dir / "fragment.dot").string(), to_dot(frag.order(), "fragment"));
  write_text_file((dir / "report.json").string(), report.dump(2) + "\n");
  if (!all_ok) {
    std::cerr << "claim verification failed; see report.json\n";
    return 2;
  }
  std::cout << "construct: all checks green; artifacts in " << dir.string() << "\n";
  return 0;
}

int cmd_sweep(const std::string& family, const std::string& out, int max_elements,
              int max_degree, unsigned threads) {
  std::vector<SweepReport> reports;
  auto want = [&](const char* name) { return family == "all" || family == name; };
  if (want("covering-vs-freeness"))
    reports.push_back(sweep_covering_vs_freeness(max_elements, max_degree, 6, threads));
  if (want("freeness-breadth"))
    reports.push_back(sweep_freeness_breadth(max_elements, max_degree, threads));
  if (want("least-covering")) reports.push_back(sweep_least_covering(max_elements, 6, threads));
  if (want("monotonicity"))
    reports.push_back(sweep_freeness_monotonicity(max_elements, max_degree + 2, threads));
  if (want("trichotomy")) reports.push_back(sweep_rho_trichotomy({2, 3, 4}, threads));
  if (want("quasi-products"))
    reports.push_back(sweep_finite_quasi_products(std::min(max_elements, 5), {2, 3}, threads));
  if (reports.empty()) fail(Errc::InputError, "unknown sweep family '" + family + "'");
  json cfg;
  cfg["family"] = family;
  cfg["max_elements"] = max_elements;
  cfg["max_degree"] = max_degree;
  json report = report_envelope(cfg, 0);
  json entries = json::array();
  bool ok = true;
  for (const auto& r : reports) {
    entries.push_back(sweep_to_json(r));
    if (!r.ok()) ok = false;
  }
  report["sweeps"] = entries;
  report["ok"] = ok;
  emit(report, out);
  return ok ? 0 : 2;
}

int cmd_export_dot(const std::string& input, const std::string& out) {
  json j = read_json_file(input);
  Poset p = poset_from_json(j);
  std::string dot = to_dot(p, j.value("name", "poset"));
  if (out.empty())
    std::cout << dot;
  else
    write_text_file(out, dot);
  return 0;
}

int cmd_validate_squares(const std::string& input, const std::string& out,
                         const std::string& support_spec, int probe_depth) {
  json j = read_json_file(input);
  CSequenceSystem s = squares_from_json(j);
  json sup = support_spec.empty()
                 ? json{{"milestones", json::array({"0", "w", "w*2", "w*3", "w^2"})},
                        {"offsets", 7}}
                 : read_json_file(support_spec);
  auto support = milestones_with_offsets(sup, s.bound().bound());
  auto r = validate_square(s, support, probe_depth);
  json report = report_envelope(j, 0);
  report["result"] = square_report_to_json(r);
  report["ok"] = r.ok;
  emit(report, out);
  return r.ok ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"finite ladder and square-sequence toolbox"};
  app.require_subcommand(1);

  std::string input, out, config, family = "all", support_spec;
  std::uint64_t seed = 1;
  int probe_depth = 8, max_elements = 6, max_degree = 4;
  unsigned threads = 0;

  auto* check = app.add_subcommand("check", "measure a poset/semilattice json file");
  check->add_option("input", input)->required();
  check->add_option("--out", out);
  check->add_option("--max-degree", max_degree);

  std::string bound_flag;
  int stage_flag = 0;
  auto* construct = app.add_subcommand("construct", "run a ladder build from a config json");
  construct->add_option("config", config)->required();
  construct->add_option("--out", out);
  construct->add_option("--seed", seed);
  construct->add_option("--probe-depth", probe_depth);
  construct->add_option("--bound", bound_flag, "override the config's ordinal bound");
  construct->add_option("--stage", stage_flag, "override the config's stage count");

  auto* sweep = app.add_subcommand("sweep", "run the exhaustive small-instance sweeps");
  sweep->add_option("family", family)
      ->check(CLI::IsMember({"all", "covering-vs-freeness", "freeness-breadth", "least-covering",
                             "monotonicity", "trichotomy", "quasi-products"}));
  sweep->add_option("--out", out);
  sweep->add_option("--budget-elements", max_elements);
  sweep->add_option("--max-degree", max_degree);
  sweep->add_option("--threads", threads);

  auto* dot = app.add_subcommand("export-dot", "emit a Hasse diagram");
  dot->add_option("input", input)->required();
  dot->add_option("--out", out);

  auto* vsq = app.add_subcommand("validate-squares", "check a square-sequence json");
  vsq->add_option("input", input)->required();
  vsq->add_option("--out", out);
  vsq->add_option("--support", support_spec);
  vsq->add_option("--probe-depth", probe_depth);

  CLI11_PARSE(app, argc, argv);

  try {
    if (app.got_subcommand(check)) return cmd_check(input, out, max_degree);
    if (app.got_subcommand(construct))
      return cmd_construct(config, out, seed, probe_depth, bound_flag, stage_flag);
    if (app.got_subcommand(sweep)) return cmd_sweep(family, out, max_elements, max_degree, threads);
    if (app.got_subcommand(dot)) return cmd_export_dot(input, out);
    if (app.got_subcommand(vsq))
      return cmd_validate_squares(input, out, support_spec, probe_depth);
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 4;
  }
  return 4;
}
