// Acceptance suite: one pass/fail line per criterion, exit 0 only when all
// criteria pass. Criterion 10 drives the CLI binary (path via --cli).

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "slantlab/rng.hpp"
#include "slantlab/warped.hpp"

using namespace slantlab;

namespace {

const Tolerances kTols;
int g_failures = 0;

void report(int number, const std::string& description, bool pass,
            const std::string& detail = "") {
  std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", number,
              description.c_str());
  if (!detail.empty()) std::printf("        %s\n", detail.c_str());
  if (!pass) ++g_failures;
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.3e", v);
  return buf;
}

ResolvedGrid grid_of(const Immersion& imm, const std::string& text) {
  return ResolvedGrid(GridSpec::parse(text), imm.params);
}

const IdentityResult* find(const IdentityReport& r, const std::string& name) {
  for (const IdentityResult& it : r.results)
    if (it.info.name == name) return &it;
  return nullptr;
}

// ---- criterion 1: slant function of the first worked example ---------------

void criterion_1() {
  const Immersion imm = get_example("example-3.1");
  const ResolvedGrid grid =
      grid_of(imm, "t=0:0:1,s=0:0:1,u=0:0:1,v=0.1:1.5:15");
  const FieldReport field = classify_field(
      imm, AmbientSpace::canonical(imm.complex_dim), grid, kTols, 0);
  bool ok = true;
  double worst = 0.0;
  for (long long i = 0; i < grid.size(); ++i) {
    const FieldPointRecord& rec = field.points[i];
    const double v = grid.point(i)[3];
    if (rec.cls.tag != PointTag::PointwiseSemiSlant || rec.cls.m1 != 2 ||
        rec.cls.m2 != 2)
      ok = false;
    worst = std::max(worst, std::abs(rec.theta - v));
  }
  ok = ok && worst <= 1e-9;
  report(1,
         "first worked example: pointwise semi-slant with m1=m2=2 and "
         "theta(v) = v over v in {0.1..1.5}",
         ok, "max |theta - v| = " + fmt(worst));
}

// ---- criterion 2: slant function of the warped example ---------------------

void criterion_2() {
  const Immersion imm = get_example("example-5.1");
  const ResolvedGrid grid =
      grid_of(imm, "t=0.5:3:4,s=0.5:3:4,u=0.3:1.2:3,v=0.3:1.2:3");
  const AmbientSpace space = AmbientSpace::canonical(imm.complex_dim);
  bool ok = true;
  double worst = 0.0;
  for (long long i = 0; i < grid.size(); ++i) {
    const Vec p = grid.point(i);
    const PointFrame frame = build_frames(jet2(imm, p));
    const TFOperators tf = tf_operators(frame, space);
    const PointClass cls =
        classify_point(slant_spectrum(tf, kTols.cluster), kTols.angle);
    if (cls.tag != PointTag::PointwiseSemiSlant || !cls.theta) {
      ok = false;
      continue;
    }
    const double expect = 1.0 / (p[0] * p[0] + p[1] * p[1] + 1.0);
    worst = std::max(worst, std::abs(std::cos(*cls.theta) - expect));
  }
  ok = ok && worst <= 1e-9;
  report(2,
         "warped example: cos(theta) = 1/(t^2+s^2+1) over the 4x4x3x3 grid",
         ok, "max |cos(theta) - 1/(t^2+s^2+1)| = " + fmt(worst));
}

// ---- criterion 3: metric and warping function ------------------------------

void criterion_3() {
  const Immersion imm = get_example("example-5.1");
  const ResolvedGrid grid =
      grid_of(imm, "t=0.5:3:4,s=0.5:3:4,u=0.3:1.2:3,v=0.3:1.2:3");
  double worst_metric = 0.0;
  for (long long i = 0; i < grid.size(); ++i) {
    const Vec p = grid.point(i);
    const double m = p[0] * p[0] + p[1] * p[1] + 1.0;
    Mat expect = Mat::Zero(4, 4);
    expect.diagonal() << 2, 2, m, m;
    worst_metric =
        std::max(worst_metric,
                 (induced_metric(imm, p) - expect).cwiseAbs().maxCoeff());
  }

  const SplitSpec split = SplitSpec::parse("base=t,s;fiber=u,v", imm.params);
  const WarpedReport warped = detect_warped(imm, split, grid, kTols, 0);
  double worst_f = 0.0;
  for (long long i = 0; i < grid.size(); ++i) {
    const Vec p = grid.point(i);
    worst_f = std::max(
        worst_f, std::abs(warped.f_values[i] -
                          std::sqrt(p[0] * p[0] + p[1] * p[1] + 1.0)));
  }

  const ResolvedGrid at23 =
      grid_of(imm, "t=2:2:1,s=3:3:1,u=0.4:0.4:1,v=0.7:0.7:1");
  const WarpingContext ctx(imm, split, at23.point(0));
  const double f23 = ctx.f_at(at23.point(0));
  const GradLnF grad =
      grad_lnf(ctx, induced_metric(imm, at23.point(0)), at23.point(0));
  const double err_f23 = std::abs(f23 - std::sqrt(14.0));
  const double err_grad = std::abs(grad.norm_sq - 13.0 / 392.0);

  const bool ok = worst_metric <= 1e-9 && warped.structurally_warped &&
                  worst_f <= 1e-9 && err_f23 <= 1e-9 && err_grad <= 1e-9;
  report(3,
         "warped example: metric diag(2,2,m,m), extracted f = sqrt(m), "
         "f(2,3) = sqrt(14), |grad ln f|^2 = 13/392",
         ok,
         "metric " + fmt(worst_metric) + ", f " + fmt(worst_f) + ", f(2,3) " +
             fmt(err_f23) + ", grad " + fmt(err_grad));
}

// ---- criterion 4: the second-fundamental-form bound ------------------------

void criterion_4() {
  const Immersion imm = get_example("example-5.1");
  const SplitSpec split = SplitSpec::parse("base=t,s;fiber=u,v", imm.params);

  const ResolvedGrid at23 =
      grid_of(imm, "t=2:2:1,s=3:3:1,u=0.4:0.4:1,v=0.7:0.7:1");
  const InequalityReport ref =
      inequality_audit(imm, split, at23, kTols, 0);
  const double err_rhs = std::abs(ref.points[0].rhs - 197.0 / 1470.0);

  const ResolvedGrid grid =
      grid_of(imm, "t=0.5:3:4,s=0.5:3:4,u=0.3:1.2:3,v=0.3:1.2:3");
  const InequalityReport audit =
      inequality_audit(imm, split, grid, kTols, 0);

  const bool ok =
      err_rhs <= 1e-9 && audit.passed && audit.min_margin >= -1e-6;
  report(4,
         "warped example: bound rhs at (2,3) equals 197/1470 and the "
         "margin stays non-negative over the grid",
         ok,
         "|rhs - 197/1470| = " + fmt(err_rhs) +
             ", min margin = " + fmt(audit.min_margin));
}

// ---- criteria 5 and 6: identity suite on the warped example ----------------

void criteria_5_and_6() {
  const Immersion imm = get_example("example-5.1");
  const ResolvedGrid grid(default_grid(imm), imm.params);
  const SplitSpec split = SplitSpec::parse("base=t,s;fiber=u,v", imm.params);
  const IdentityReport suite =
      identity_suite(imm, split, grid, {}, 20, 2024, kTols, 0);

  const IdentityResult* flat = find(suite, "mixed-holomorphic-flat");
  const IdentityResult* warp = find(suite, "mixed-warping");
  const bool ok5 = flat && flat->applicable && flat->max_residual <= 1e-8 &&
                   warp && warp->applicable && warp->max_residual <= 1e-6;
  report(5,
         "mixed second-form identities: <h(X,Y),FV> = 0 within 1e-8 and the "
         "mixed warping identity within 1e-6 (20 probes/point)",
         ok5,
         flat && warp ? "flat " + fmt(flat->max_residual) + ", warping " +
                            fmt(warp->max_residual)
                      : "identities missing");

  bool ok6 = true;
  std::string detail6;
  for (const char* name :
       {"shape-exchange", "shape-transfer", "shape-transfer-j",
        "holomorphic-integrability", "holomorphic-foliation-geodesic",
        "slant-foliation-umbilic"}) {
    const IdentityResult* r = find(suite, name);
    if (!r || !r->applicable || r->max_residual > 1e-6) ok6 = false;
    if (r) detail6 += std::string(name) + " " + fmt(r->max_residual) + "; ";
  }
  // the as-stated companion forms must be measurably violated here: their
  // defect is the non-constant warping itself
  std::string deviations;
  for (const char* name :
       {"shape-exchange-strict", "shape-transfer-strict",
        "shape-transfer-j-strict", "slant-foliation-geodesic-strict"}) {
    const IdentityResult* r = find(suite, name);
    if (!r || r->max_residual <= 1e-3) ok6 = false;
    if (r) deviations += std::string(name) + " " + fmt(r->max_residual) + "; ";
  }
  report(6,
         "shape-operator and foliation identities hold within 1e-6 in their "
         "warped-product form",
         ok6, detail6 + "| as-stated variants deviate: " + deviations);
}

// ---- criterion 7: property suite over random immersion documents -----------

std::string random_term(ProbeRng& rng, const std::vector<std::string>& params,
                        int depth) {
  char buf[48];
  const auto& p = params[rng.next_u64() % params.size()];
  const double roll = rng.uniform();
  if (depth >= 2 || roll < 0.3) {
    std::snprintf(buf, sizeof(buf), "%.3f*%s", rng.uniform(-1.5, 1.5),
                  p.c_str());
    return buf;
  }
  if (roll < 0.55)
    return "sin(" + random_term(rng, params, depth + 1) + ")";
  if (roll < 0.75)
    return "cos(" + random_term(rng, params, depth + 1) + ")";
  if (roll < 0.9)
    return "(" + random_term(rng, params, depth + 1) + ")*(" +
           random_term(rng, params, depth + 1) + ")";
  return "exp(0.4*" + p + ")";
}

std::string random_document(ProbeRng& rng, int k, int n) {
  static const char* names[] = {"a", "b", "c", "d"};
  std::vector<std::string> params(names, names + k);
  std::ostringstream doc;
  doc << R"({"name":"random","params":[)";
  for (int i = 0; i < k; ++i) doc << (i ? "," : "") << '"' << params[i] << '"';
  doc << R"(],"ambient_complex_dim":)" << n << R"(,"coords":[)";
  for (int c = 0; c < 2 * n; ++c) {
    if (c) doc << ',';
    std::string text = random_term(rng, params, 0);
    if (c < k)  // keep the Jacobian generically full rank
      text = params[c] + "+0.2*(" + text + ")";
    doc << '"' << text << '"';
  }
  doc << "]}";
  return doc.str();
}

void criterion_7() {
  ProbeRng rng(20240810);
  bool ok = true;
  std::string detail;
  int immersions_done = 0;
  for (int trial = 0; immersions_done < 50 && trial < 200; ++trial) {
    const int k = 1 + static_cast<int>(rng.next_u64() % 4);
    const int n = 2 + static_cast<int>(rng.next_u64() % 4);
    const Immersion imm = load_spec_text(random_document(rng, k, n));
    const AmbientSpace space = AmbientSpace::canonical(n);
    int points_done = 0;
    for (int attempt = 0; points_done < 5 && attempt < 60; ++attempt) {
      Vec p(k);
      for (int i = 0; i < k; ++i) p[i] = rng.uniform(-1.0, 1.0);
      ImmersionJet jet = jet2(imm, p);
      PointFrame frame;
      try {
        frame = build_frames(jet);
      } catch (const Error&) {
        continue;  // degenerate draw, resample
      }
      ++points_done;
      const TFOperators tf = tf_operators(frame, space);
      for (int probe = 0; probe < 20; ++probe) {
        const Vec x = rng.sphere(k);
        if (std::abs((tf.T * x).squaredNorm() + (tf.F * x).squaredNorm() -
                     1.0) > 1e-10)
          ok = false;
      }
      if ((tf.T + tf.T.transpose()).cwiseAbs().maxCoeff() > 1e-10) ok = false;
      const SlantSpectrum spec = slant_spectrum(tf, kTols.cluster);
      for (const SlantCluster& c : spec.clusters)
        if (c.lambda < -1e-10 || c.lambda > 1.0 + 1e-10) ok = false;
      const SecondForm h = second_form(jet, frame);
      for (const Mat& c : h.comp)
        if ((c - c.transpose()).cwiseAbs().maxCoeff() > 1e-9) ok = false;
      if (h.normal_dim > 0) {
        for (int probe = 0; probe < 10; ++probe) {
          const Vec x = rng.sphere(k), y = rng.sphere(k);
          const Vec nrm = rng.sphere(h.normal_dim);
          if (std::abs((shape_operator(h, nrm) * x).dot(y) -
                       h.apply(x, y).dot(nrm)) > 1e-9)
            ok = false;
        }
      }
      // AD Jacobian against central differences
      const double step = 1e-5;
      for (int j = 0; j < k; ++j) {
        Vec hi = p, lo = p;
        hi[j] += step;
        lo[j] -= step;
        const Vec fd =
            (jet2(imm, hi).position - jet2(imm, lo).position) / (2 * step);
        if ((jet.jacobian.col(j) - fd).cwiseAbs().maxCoeff() > 1e-5)
          ok = false;
      }
    }
    if (points_done < 5) {
      ok = false;
      detail = "could not find 5 non-degenerate points";
    }
    ++immersions_done;
  }
  if (immersions_done < 50) ok = false;
  report(7,
         "property suite on 50 random immersion documents: J-split isometry, "
         "skew T, spectrum in [0,1], symmetric h, shape-operator duality, "
         "AD-vs-FD Jacobians",
         ok, detail);
}

// ---- criterion 8: spectral angle against the brute-force angle -------------

void criterion_8() {
  bool ok = true;
  double worst = 0.0;
  ProbeRng rng(88);
  for (const std::string& name : example_names()) {
    const Immersion imm = get_example(name);
    const ResolvedGrid grid(default_grid(imm), imm.params);
    const AmbientSpace space = AmbientSpace::canonical(imm.complex_dim);
    for (int i = 0; i < 10; ++i) {
      const long long index = (grid.size() - 1) * i / 9;
      const Vec p = grid.point(index);
      const PointFrame frame = build_frames(jet2(imm, p));
      const TFOperators tf = tf_operators(frame, space);
      const SlantSpectrum spec = slant_spectrum(tf, kTols.cluster);
      for (const SlantCluster& c : spec.clusters) {
        for (int probe = 0; probe < 100; ++probe) {
          const Vec x = c.basis * rng.sphere(c.multiplicity);
          worst = std::max(worst,
                           std::abs(wirtinger_angle(tf, x) - c.theta));
        }
      }
    }
  }
  ok = worst <= 1e-7;
  report(8,
         "spectral slant angles match brute-force angle sampling on every "
         "built-in (100 probes per cluster, 10 points each)",
         ok, "max |angle - theta| = " + fmt(worst));
}

// ---- criterion 9: degenerate classes and the circle ------------------------

void criterion_9() {
  bool ok = true;
  std::string detail;

  {
    const Immersion imm = get_example("holomorphic-plane");
    Vec p(2);
    p << 0.3, -0.8;
    const PointFrame frame = build_frames(jet2(imm, p));
    const TFOperators tf = tf_operators(frame, AmbientSpace::canonical(2));
    const PointClass cls =
        classify_point(slant_spectrum(tf, kTols.cluster), kTols.angle);
    if (cls.tag != PointTag::Complex || cls.m2 != 0 ||
        std::abs(*cls.theta) > 1e-12)
      ok = false;
  }
  {
    const Immersion imm = get_example("totally-real-plane");
    Vec p(2);
    p << 1.1, 0.4;
    const PointFrame frame = build_frames(jet2(imm, p));
    const TFOperators tf = tf_operators(frame, AmbientSpace::canonical(2));
    const PointClass cls =
        classify_point(slant_spectrum(tf, kTols.cluster), kTols.angle);
    if (cls.tag != PointTag::TotallyReal ||
        std::abs(*cls.theta - std::acos(0.0)) > 1e-12)
      ok = false;
  }
  for (double r : {0.5, 1.0, 2.0}) {
    const Immersion circle = make_circle(r);
    for (double t : {0.0, 1.1, 2.9}) {
      Vec p(1);
      p << t;
      const ImmersionJet jet = jet2(circle, p);
      const PointFrame frame = build_frames(jet);
      const SecondForm h = second_form(jet, frame);
      const TFOperators tf = tf_operators(frame, AmbientSpace::canonical(1));
      const HInvariants inv =
          h_invariants(h, slant_spectrum(tf, kTols.cluster));
      const double err = std::abs(inv.total_sq - 1.0 / (r * r));
      if (err > 1e-9) {
        ok = false;
        detail = "circle r=" + fmt(r) + " |h|^2 error " + fmt(err);
      }
    }
  }
  report(9,
         "flat planes classify as complex / totally real; circle |h|^2 = "
         "1/r^2 for r in {0.5, 1, 2}",
         ok, detail);
}

// ---- criterion 10: byte-identical CLI reports ------------------------------

struct CliRun {
  int exit_code = 0;
  std::string bytes;
};

CliRun run_cli(const std::string& cli, const std::string& threads,
               const std::string& args, const std::string& out_path) {
  const std::string command = "SLANTLAB_THREADS=" + threads + " " + cli + " " +
                              args + " --out " + out_path;
  const int rc = std::system(command.c_str());
  CliRun run;
  run.exit_code = rc;
  std::ifstream in(out_path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  run.bytes = buffer.str();
  return run;
}

void criterion_10(const std::string& cli) {
  const std::vector<std::string> commands = {
      "classify --immersion example-3.1 --point t=0,s=0,u=0,v=1.0471976",
      "scan --immersion example-5.1 --grid t=0.6:3.1:3,s=0.6:3.1:3,u=0.2:1.3:3,v=0.2:1.3:3",
      "check-warped --immersion example-5.1 --split base=t,s;fiber=u,v "
      "--grid t=0.6:3.1:3,s=0.6:3.1:3,u=0.2:1.3:3,v=0.2:1.3:3",
      "identities --immersion example-5.1 --split base=t,s;fiber=u,v "
      "--grid t=0.6:3.1:3,s=0.6:3.1:3,u=0.2:1.3:3,v=0.2:1.3:3 --seed 7 "
      "--probes 8",
      "audit-inequality --immersion example-5.1 --split base=t,s;fiber=u,v "
      "--grid t=0.5:3:3,s=0.5:3:3,u=0.3:1.2:2,v=0.3:1.2:2 --seed 7",
  };
  bool ok = true;
  std::string detail;
  int index = 0;
  for (const std::string& args : commands) {
    const std::string base = "acceptance_cli_" + std::to_string(index++);
    const CliRun one = run_cli(cli, "1", args, base + "_a.json");
    const CliRun four = run_cli(cli, "4", args, base + "_b.json");
    const CliRun again = run_cli(cli, "4", args, base + "_c.json");
    if (one.bytes.empty() || one.bytes != four.bytes ||
        four.bytes != again.bytes || one.exit_code != four.exit_code) {
      ok = false;
      detail = "divergence in: " + args;
    }
  }
  report(10,
         "CLI runs with one and four threads produce byte-identical JSON "
         "reports and equal exit codes",
         ok, detail);
}

}  // namespace

int main(int argc, char** argv) {
  std::string cli = "./slantcli";
  for (int i = 1; i + 1 < argc; ++i)
    if (std::string(argv[i]) == "--cli") cli = argv[i + 1];

  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criteria_5_and_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10(cli);

  if (g_failures == 0) {
    std::printf("all acceptance criteria passed\n");
    return 0;
  }
  std::printf("%d acceptance criterion(s) failed\n", g_failures);
  return 1;
}
