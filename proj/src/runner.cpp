#include "slantlab/runner.hpp"

#include <cmath>
#include <limits>

#include "slantlab/ambient.hpp"
#include "slantlab/pointgeom.hpp"
#include "slantlab/warped.hpp"

namespace slantlab {

namespace {

using nlohmann::json;

json tolerances_json(const Tolerances& t) {
  return json{{"structural", t.structural}, {"identity", t.identity},
              {"fd", t.fd},                 {"theta_guard", t.theta_guard},
              {"cluster", t.cluster},       {"angle", t.angle},
              {"margin", t.margin}};
}

json envelope(const std::string& command, const Immersion* imm,
              const RunOptions* opts) {
  json j;
  j["schema_version"] = "1";
  j["command"] = command;
  if (imm) j["immersion"] = imm->name;
  if (opts) {
    j["options"] = json{{"seed", opts->seed},
                        {"probes", opts->probes},
                        {"tolerances", tolerances_json(opts->tols)}};
  }
  j["error"] = nullptr;
  return j;
}

RunOutcome finish(json j, bool passed) {
  j["passed"] = passed;
  return RunOutcome{passed ? 0 : 1, dump_json(j)};
}

RunOutcome catch_error(json j, const Error& e) {
  j["passed"] = false;
  j["error"] = json{{"code", error_code_name(e.code())}, {"message", e.what()}};
  return RunOutcome{is_usage_error(e.code()) ? 2 : 3, dump_json(j),
                    std::string(error_code_name(e.code())) + ": " + e.what()};
}

json vec_json(const Vec& v) {
  json out = json::array();
  for (int i = 0; i < v.size(); ++i) out.push_back(v[i]);
  return out;
}

json theta_json(double theta) {
  if (std::isfinite(theta)) return theta;
  return nullptr;
}

json class_json(const PointClass& cls) {
  json j;
  j["tag"] = tag_name(cls.tag);
  j["m1"] = cls.m1;
  j["m2"] = cls.m2;
  j["theta"] = cls.theta ? json(*cls.theta) : json(nullptr);
  return j;
}

ResolvedGrid resolve_grid(const Immersion& imm, const std::string& grid) {
  const GridSpec spec =
      grid.empty() ? default_grid(imm) : GridSpec::parse(grid);
  return ResolvedGrid(spec, imm.params);
}

}  // namespace

RunOutcome run_list_examples() {
  json j = envelope("list-examples", nullptr, nullptr);
  json items = json::array();
  for (const std::string& name : example_names()) {
    const Immersion imm = get_example(name);
    items.push_back(json{{"name", imm.name},
                         {"params", imm.params},
                         {"ambient_complex_dim", imm.complex_dim},
                         {"domain_notes", imm.domain_notes}});
  }
  j["payload"] = json{{"examples", items}};
  return finish(std::move(j), true);
}

RunOutcome run_describe(const Immersion& imm) {
  json j = envelope("describe", &imm, nullptr);
  try {
    json coords = json::array();
    for (const Expr& e : imm.coords) coords.push_back(to_string(e));
    j["payload"] = json{{"name", imm.name},
                        {"params", imm.params},
                        {"ambient_complex_dim", imm.complex_dim},
                        {"ambient_dim", imm.ambient_dim()},
                        {"coords", coords},
                        {"domain_notes", imm.domain_notes},
                        {"default_grid", default_grid(imm).to_string()}};
    return finish(std::move(j), true);
  } catch (const Error& e) {
    return catch_error(std::move(j), e);
  }
}

RunOutcome run_classify(const Immersion& imm, const std::string& point,
                        const RunOptions& opts) {
  json j = envelope("classify", &imm, &opts);
  try {
    const Vec p = parse_point(point, imm.params);
    j["options"]["point"] = point;
    const AmbientSpace space = AmbientSpace::canonical(imm.complex_dim);
    const ImmersionJet jet = jet2(imm, p);
    const PointFrame frame = build_frames(jet);
    const TFOperators tf = tf_operators(frame, space);
    const SlantSpectrum spec = slant_spectrum(tf, opts.tols.cluster);
    const PointClass cls = classify_point(spec, opts.tols.angle);

    json clusters = json::array();
    for (const SlantCluster& c : spec.clusters)
      clusters.push_back(json{{"lambda", c.lambda},
                              {"multiplicity", c.multiplicity},
                              {"theta", c.theta}});
    json payload = class_json(cls);
    payload["point"] = vec_json(p);
    payload["params"] = imm.params;
    payload["clusters"] = clusters;
    j["payload"] = std::move(payload);
    return finish(std::move(j), true);
  } catch (const Error& e) {
    return catch_error(std::move(j), e);
  }
}

RunOutcome run_scan(const Immersion& imm, const std::string& grid,
                    const RunOptions& opts) {
  json j = envelope("scan", &imm, &opts);
  try {
    const ResolvedGrid rg = resolve_grid(imm, grid);
    j["options"]["grid"] = rg.spec().to_string();
    const AmbientSpace space = AmbientSpace::canonical(imm.complex_dim);
    const FieldReport report =
        classify_field(imm, space, rg, opts.tols, opts.threads);

    json points = json::array();
    for (long long i = 0; i < rg.size(); ++i) {
      const FieldPointRecord& rec = report.points[i];
      json pt = class_json(rec.cls);
      pt["index"] = i;
      pt["point"] = vec_json(rg.point(i));
      pt["theta"] = theta_json(rec.theta);
      points.push_back(std::move(pt));
    }
    j["payload"] = json{{"params", imm.params},
                        {"verdict", report.verdict},
                        {"uniform", report.uniform},
                        {"constant_theta", report.constant_theta},
                        {"theta_min", report.theta_min},
                        {"theta_max", report.theta_max},
                        {"points", points}};
    return finish(std::move(j), true);
  } catch (const Error& e) {
    return catch_error(std::move(j), e);
  }
}

RunOutcome run_check_warped(const Immersion& imm, const std::string& split,
                            const std::string& grid, const RunOptions& opts) {
  json j = envelope("check-warped", &imm, &opts);
  try {
    const ResolvedGrid rg = resolve_grid(imm, grid);
    const SplitSpec sp = SplitSpec::parse(split, imm.params);
    j["options"]["grid"] = rg.spec().to_string();
    j["options"]["split"] = sp.to_string(imm.params);
    const WarpedReport report =
        detect_warped(imm, sp, rg, opts.tols, opts.threads);
    j["payload"] =
        json{{"offdiag_residual", report.offdiag_residual},
             {"base_independence_residual", report.base_independence_residual},
             {"f_reference", report.f_reference},
             {"f_values", report.f_values},
             {"f_consistency_residual", report.f_consistency_residual},
             {"grad_lnf_sq", report.grad_lnf_sq},
             {"connection_residual", report.connection_residual},
             {"hiepko_base_geodesic", report.hiepko_base_geodesic},
             {"hiepko_fiber_umbilical", report.hiepko_fiber_umbilical},
             {"structurally_warped", report.structurally_warped}};
    return finish(std::move(j), report.passed);
  } catch (const Error& e) {
    return catch_error(std::move(j), e);
  }
}

RunOutcome run_identities(const Immersion& imm, const std::string& split,
                          const std::string& grid, const std::string& suite,
                          const RunOptions& opts) {
  json j = envelope("identities", &imm, &opts);
  try {
    const ResolvedGrid rg = resolve_grid(imm, grid);
    j["options"]["grid"] = rg.spec().to_string();
    std::optional<SplitSpec> sp;
    if (!split.empty()) {
      sp = SplitSpec::parse(split, imm.params);
      j["options"]["split"] = sp->to_string(imm.params);
    }
    std::vector<std::string> selection;
    if (!suite.empty() && suite != "all") {
      std::size_t start = 0;
      while (start <= suite.size()) {
        std::size_t end = suite.find(',', start);
        if (end == std::string::npos) end = suite.size();
        const std::string name = suite.substr(start, end - start);
        if (!name.empty()) selection.push_back(name);
        start = end + 1;
      }
    }
    j["options"]["suite"] = suite.empty() ? "all" : suite;

    const IdentityReport report =
        identity_suite(imm, sp, rg, selection, opts.probes, opts.seed,
                       opts.tols, opts.threads);
    json items = json::array();
    for (const IdentityResult& r : report.results) {
      items.push_back(json{{"name", r.info.name},
                           {"description", r.info.description},
                           {"kind", r.info.predicate ? "predicate" : "identity"},
                           {"needs_split", r.info.needs_split},
                           {"applicable", r.applicable},
                           {"max_residual", r.max_residual},
                           {"tolerance", r.tolerance},
                           {"holds", r.holds}});
    }
    j["payload"] = json{{"identities", items},
                        {"evaluated_points", report.evaluated_points}};
    return finish(std::move(j), report.passed);
  } catch (const Error& e) {
    return catch_error(std::move(j), e);
  }
}

RunOutcome run_audit_inequality(const Immersion& imm, const std::string& split,
                                const std::string& grid,
                                const RunOptions& opts) {
  json j = envelope("audit-inequality", &imm, &opts);
  try {
    const ResolvedGrid rg = resolve_grid(imm, grid);
    const SplitSpec sp = SplitSpec::parse(split, imm.params);
    j["options"]["grid"] = rg.spec().to_string();
    j["options"]["split"] = sp.to_string(imm.params);
    const InequalityReport report =
        inequality_audit(imm, sp, rg, opts.tols, opts.threads);

    json points = json::array();
    for (long long i = 0; i < static_cast<long long>(report.points.size());
         ++i) {
      const InequalityPointRecord& rec = report.points[i];
      points.push_back(json{{"index", i},
                            {"point", vec_json(rg.point(i))},
                            {"lhs", rec.lhs},
                            {"rhs", rec.rhs},
                            {"margin", rec.margin},
                            {"theta", rec.theta},
                            {"grad_lnf_sq", rec.grad_sq},
                            {"skipped", rec.skipped}});
    }
    j["payload"] = json{
        {"params", imm.params},
        {"points", points},
        {"min_margin", report.min_margin},
        {"skipped", report.skipped},
        {"structurally_warped", report.structurally_warped},
        {"equality_diagnostics",
         json{{"slant_block_vanishes", report.slant_block_vanishes},
              {"max_slant_block", report.max_slant_block},
              {"holomorphic_block_vanishes", report.holomorphic_block_vanishes},
              {"max_holomorphic_block", report.max_holomorphic_block},
              {"minimal", report.minimal},
              {"max_mean_curvature", report.max_mean_curvature}}}};
    return finish(std::move(j), report.passed);
  } catch (const Error& e) {
    return catch_error(std::move(j), e);
  }
}

std::string render_csv(const std::string& report_json) {
  json j;
  try {
    j = json::parse(report_json);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument,
         std::string("report is not valid JSON: ") + e.what());
  }
  return report_csv(j);
}

}  // namespace slantlab
