#include "slantlab/warped.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <set>

#include "slantlab/parallel.hpp"
#include "slantlab/rng.hpp"

namespace slantlab {

namespace {

constexpr double kFdStep = 1e-4;
const double kHalfPi = std::acos(0.0);

Mat metric_at(const Immersion& imm, const Vec& point) {
  const ImmersionJet jet = jet2(imm, point);
  return jet.jacobian.transpose() * jet.jacobian;
}

// dG[l](i,j) = d G_ij / d u_l by central differences
std::vector<Mat> metric_derivatives(const Immersion& imm, const Vec& point) {
  const int k = imm.param_count();
  std::vector<Mat> dg;
  dg.reserve(k);
  for (int l = 0; l < k; ++l) {
    Vec hi = point, lo = point;
    hi[l] += kFdStep;
    lo[l] -= kFdStep;
    dg.push_back((metric_at(imm, hi) - metric_at(imm, lo)) / (2.0 * kFdStep));
  }
  return dg;
}

// gamma[l](i,j) = 0.5 * G^{lm} (d_i G_jm + d_j G_im - d_m G_ij)
std::vector<Mat> christoffel(const Mat& g, const std::vector<Mat>& dg) {
  const int k = static_cast<int>(g.rows());
  const Mat ginv = g.inverse();
  std::vector<Mat> gamma(k, Mat::Zero(k, k));
  for (int i = 0; i < k; ++i)
    for (int j = i; j < k; ++j) {
      Vec lower(k);
      for (int m = 0; m < k; ++m)
        lower[m] = 0.5 * (dg[i](j, m) + dg[j](i, m) - dg[m](i, j));
      const Vec upper = ginv * lower;
      for (int l = 0; l < k; ++l) {
        gamma[l](i, j) = upper[l];
        gamma[l](j, i) = upper[l];
      }
    }
  return gamma;
}

struct MaxTracker {
  double value = 0;
  void feed(double v) { value = std::max(value, std::abs(v)); }
};

}  // namespace

WarpingContext::WarpingContext(const Immersion& imm, const SplitSpec& split,
                               const Vec& reference_point)
    : imm_(&imm), split_(split), ref_(reference_point) {
  if (reference_point.size() != imm.param_count())
    fail(ErrorCode::DimensionMismatch,
         "reference point does not match the immersion parameters");
}

double WarpingContext::f_at(const Vec& full_point) const {
  Vec q = ref_;
  for (int b : split_.base) q[b] = full_point[b];
  const ImmersionJet jet = jet2(*imm_, q);
  const int f0 = split_.fiber[0];
  const double g00 = jet.jacobian.col(f0).squaredNorm();
  if (!(g00 > 0.0))
    fail(ErrorCode::InvalidWarping,
         "extracted warping function is not positive");
  return std::sqrt(g00);
}

Vec WarpingContext::dlnf_at(const Vec& full_point) const {
  Vec out = Vec::Zero(imm_->param_count());
  for (int b : split_.base) {
    Vec hi = full_point, lo = full_point;
    hi[b] += kFdStep;
    lo[b] -= kFdStep;
    out[b] =
        (std::log(f_at(hi)) - std::log(f_at(lo))) / (2.0 * kFdStep);
  }
  return out;
}

GradLnF grad_lnf(const WarpingContext& ctx, const Mat& induced_metric,
                 const Vec& full_point) {
  const auto& base = ctx.split().base;
  const int nb = static_cast<int>(base.size());
  Mat gb(nb, nb);
  for (int i = 0; i < nb; ++i)
    for (int j = 0; j < nb; ++j) gb(i, j) = induced_metric(base[i], base[j]);
  const Vec dln_full = ctx.dlnf_at(full_point);
  Vec dln(nb);
  for (int i = 0; i < nb; ++i) dln[i] = dln_full[base[i]];
  GradLnF out;
  out.grad = gb.inverse() * dln;
  out.norm_sq = dln.dot(out.grad);
  return out;
}

WarpedReport detect_warped(const Immersion& imm, const SplitSpec& split,
                           const ResolvedGrid& grid, const Tolerances& tols,
                           int threads) {
  const long long n = grid.size();
  if (n <= 0) fail(ErrorCode::InvalidArgument, "grid is empty");
  const auto& base = split.base;
  const auto& fiber = split.fiber;
  const int nf = static_cast<int>(fiber.size());

  const Vec ref = grid.point(0);
  WarpingContext ctx(imm, split, ref);
  const double f_ref = ctx.f_at(ref);

  // reference fiber metric g2(phi) = G_fiber(base_ref, phi) / f_ref^2
  auto fiber_block = [&](const Mat& g) {
    Mat out(nf, nf);
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < nf; ++j) out(i, j) = g(fiber[i], fiber[j]);
    return out;
  };

  WarpedReport report;
  report.f_reference = f_ref;
  report.f_values.resize(n);
  report.grad_lnf_sq.resize(n);

  struct PointResult {
    double offdiag = 0, indep = 0, consistency = 0, connection = 0;
    double base_geo = 0, fiber_umb = 0;
  };
  std::vector<PointResult> per_point(n);

  parallel_for(n, threads, [&](long long idx) {
    const Vec p = grid.point(idx);
    const Mat g = metric_at(imm, p);
    PointResult r;

    MaxTracker offdiag;
    for (int b : base)
      for (int f : fiber) offdiag.feed(g(b, f));
    r.offdiag = offdiag.value;

    const std::vector<Mat> dg = metric_derivatives(imm, p);
    MaxTracker indep;
    for (int f : fiber)
      for (int b1 : base)
        for (int b2 : base) indep.feed(dg[f](b1, b2));
    r.indep = indep.value;

    const double f_here = ctx.f_at(p);
    report.f_values[idx] = f_here;

    // fiber block against the warped model f(base)^2 * g2(fiber)
    Vec ref_base_point = p;
    for (int b : base) ref_base_point[b] = ref[b];
    const Mat g2 =
        fiber_block(metric_at(imm, ref_base_point)) / (f_ref * f_ref);
    const Mat model = (f_here * f_here) * g2;
    MaxTracker consistency;
    const Mat gf = fiber_block(g);
    for (int i = 0; i < nf; ++i)
      for (int j = 0; j < nf; ++j) consistency.feed(gf(i, j) - model(i, j));
    r.consistency = consistency.value;

    const GradLnF grad = grad_lnf(ctx, g, p);
    report.grad_lnf_sq[idx] = grad.norm_sq;

    // warped connection identity and the two foliation residuals, all from
    // finite-difference Christoffel symbols (independent of the AD path)
    const std::vector<Mat> gamma = christoffel(g, dg);
    const Vec dln = ctx.dlnf_at(p);
    const int k = imm.param_count();
    MaxTracker connection, base_geo;
    for (int b : base) {
      for (int f : fiber) {
        Vec w = Vec::Zero(k);
        for (int l = 0; l < k; ++l) w[l] = gamma[l](b, f);
        w[f] -= dln[b];
        connection.feed(std::sqrt(w.dot(g * w)) /
                        (std::sqrt(g(b, b)) * std::sqrt(g(f, f))));
      }
    }
    for (std::size_t i = 0; i < base.size(); ++i) {
      for (std::size_t j = i; j < base.size(); ++j) {
        const int b1 = base[i], b2 = base[j];
        Vec w = Vec::Zero(k);
        for (int f : fiber) w[f] = gamma[f](b1, b2);
        base_geo.feed(std::sqrt(w.dot(g * w)) /
                      (std::sqrt(g(b1, b1)) * std::sqrt(g(b2, b2))));
      }
    }
    r.connection = connection.value;
    r.base_geo = base_geo.value;

    // trace-free part of the fiber-leaf second form within the submanifold
    const Mat gf_inv = gf.inverse();
    MaxTracker fiber_umb;
    const double gf_scale = gf.norm();
    for (int b : base) {
      Mat s(nf, nf);
      for (int i = 0; i < nf; ++i)
        for (int j = 0; j < nf; ++j) s(i, j) = gamma[b](fiber[i], fiber[j]);
      const double c = (gf_inv * s).trace() / nf;
      fiber_umb.feed((s - c * gf).norm() / gf_scale);
    }
    r.fiber_umb = fiber_umb.value;

    per_point[idx] = r;
  });

  for (const PointResult& r : per_point) {
    report.offdiag_residual = std::max(report.offdiag_residual, r.offdiag);
    report.base_independence_residual =
        std::max(report.base_independence_residual, r.indep);
    report.f_consistency_residual =
        std::max(report.f_consistency_residual, r.consistency);
    report.connection_residual =
        std::max(report.connection_residual, r.connection);
    report.hiepko_base_geodesic =
        std::max(report.hiepko_base_geodesic, r.base_geo);
    report.hiepko_fiber_umbilical =
        std::max(report.hiepko_fiber_umbilical, r.fiber_umb);
  }
  report.structurally_warped =
      report.offdiag_residual <= tols.structural &&
      report.f_consistency_residual <= tols.structural &&
      report.base_independence_residual <= tols.fd;
  report.passed = report.structurally_warped &&
                  report.connection_residual <= tols.fd &&
                  report.hiepko_base_geodesic <= tols.fd &&
                  report.hiepko_fiber_umbilical <= tols.fd;
  return report;
}

InequalityReport inequality_audit(const Immersion& imm, const SplitSpec& split,
                                  const ResolvedGrid& grid,
                                  const Tolerances& tols, int threads) {
  InequalityReport report;
  const WarpedReport warped = detect_warped(imm, split, grid, tols, threads);
  report.structurally_warped = warped.structurally_warped;
  if (!warped.structurally_warped) {
    report.passed = false;
    return report;
  }

  const long long n = grid.size();
  const AmbientSpace space = AmbientSpace::canonical(imm.complex_dim);
  const WarpingContext ctx(imm, split, grid.point(0));

  report.points.resize(n);
  struct Extra {
    double slant = 0, holo = 0, mean = 0;
  };
  std::vector<Extra> extras(n);

  parallel_for(n, threads, [&](long long idx) {
    const Vec p = grid.point(idx);
    const ImmersionJet jet = jet2(imm, p);
    const PointFrame frame = build_frames(jet);
    const TFOperators tf = tf_operators(frame, space);
    const SlantSpectrum spec = slant_spectrum(tf, tols.cluster);
    const PointClass cls = classify_point(spec, tols.angle);
    if (cls.tag != PointTag::PointwiseSemiSlant)
      fail(ErrorCode::InvalidArgument,
           std::string("inequality audit requires pointwise semi-slant "
                       "points; classified as ") +
               tag_name(cls.tag));
    InequalityPointRecord rec;
    rec.theta = *cls.theta;
    if (rec.theta <= tols.theta_guard ||
        rec.theta >= kHalfPi - tols.theta_guard) {
      rec.skipped = true;
      report.points[idx] = rec;
      return;
    }
    const SecondForm h = second_form(jet, frame);
    const HInvariants inv = h_invariants(h, spec, tols.angle);
    const GradLnF grad = grad_lnf(ctx, frame.induced_metric, p);
    const double sin2 = std::sin(rec.theta) * std::sin(rec.theta);
    const double cos2 = std::cos(rec.theta) * std::cos(rec.theta);
    rec.lhs = inv.total_sq;
    rec.grad_sq = grad.norm_sq;
    rec.rhs = 2.0 * cls.m2 * ((1.0 + cos2) / sin2) * grad.norm_sq;
    rec.margin = rec.lhs - rec.rhs;
    report.points[idx] = rec;
    extras[idx] = {inv.slant_sq, inv.holomorphic_sq, inv.mean_curvature_norm};
  });

  report.min_margin = std::numeric_limits<double>::infinity();
  for (long long i = 0; i < n; ++i) {
    if (report.points[i].skipped) {
      ++report.skipped;
      continue;
    }
    report.min_margin = std::min(report.min_margin, report.points[i].margin);
    report.max_slant_block = std::max(report.max_slant_block, extras[i].slant);
    report.max_holomorphic_block =
        std::max(report.max_holomorphic_block, extras[i].holo);
    report.max_mean_curvature =
        std::max(report.max_mean_curvature, extras[i].mean);
  }
  if (!std::isfinite(report.min_margin)) report.min_margin = 0.0;
  report.slant_block_vanishes = report.max_slant_block < tols.identity;
  report.holomorphic_block_vanishes =
      report.max_holomorphic_block < tols.identity;
  report.minimal = report.max_mean_curvature < tols.identity;
  report.passed = report.min_margin >= -tols.margin;
  return report;
}

// --- identity suite ---------------------------------------------------------

namespace {

struct PointCtx {
  PointFrame frame;
  TFOperators tf;
  SlantSpectrum spec;
  SecondForm h;
  Mat holo;       // frame-coordinate basis of the lambda=1 cluster (may be empty)
  Mat slant;      // basis of the slant cluster (may be empty)
  double lam = 0; // cos^2(theta) of the slant cluster
  double sin2 = 0;
  bool has_split = false;
  Vec dlnf;       // parameter-space gradient of ln f (zero on fiber axes)

  double xlnf(const Vec& xi) const {
    return (frame.frame_to_coord * xi).dot(dlnf);
  }
};

struct Probes {
  Vec x, y, v, w;
};

using Evaluator = std::function<double(const PointCtx&, const Probes&)>;

struct IdentityDef {
  IdentityInfo info;
  bool needs_holo;   // requires a lambda=1 cluster
  bool needs_slant;  // requires a slant cluster
  Evaluator eval;    // one probe draw -> |residual|; null for bracket checks
};

double dot(const Vec& a, const Vec& b) { return a.dot(b); }

const std::vector<IdentityDef>& identity_defs() {
  static const std::vector<IdentityDef> defs = [] {
    std::vector<IdentityDef> d;
    auto add = [&d](const char* name, const char* desc, bool predicate,
                    bool needs_split, bool fd_path, bool needs_holo,
                    bool needs_slant, Evaluator eval) {
      IdentityDef def;
      def.info = {name, desc, predicate, needs_split, fd_path};
      def.needs_holo = needs_holo;
      def.needs_slant = needs_slant;
      def.eval = std::move(eval);
      d.push_back(std::move(def));
    };

    add("slant-metric-tangent",
        "<TV,TW> = cos^2(theta) <V,W> on the slant cluster", false, false,
        false, false, true, [](const PointCtx& c, const Probes& p) {
          return std::abs(dot(c.tf.T * p.v, c.tf.T * p.w) -
                          c.lam * dot(p.v, p.w));
        });
    add("slant-metric-normal",
        "<FV,FW> = sin^2(theta) <V,W> on the slant cluster", false, false,
        false, false, true, [](const PointCtx& c, const Probes& p) {
          return std::abs(dot(c.tf.F * p.v, c.tf.F * p.w) -
                          c.sin2 * dot(p.v, p.w));
        });
    add("holomorphic-integrability",
        "<h(X,JY),FV> = <h(JX,Y),FV>: bracket closure of the holomorphic "
        "cluster seen through the second form",
        false, false, false, true, true,
        [](const PointCtx& c, const Probes& p) {
          const Vec fv = c.tf.F * p.v;
          return std::abs(dot(c.h.apply(p.x, c.tf.T * p.y), fv) -
                          dot(c.h.apply(c.tf.T * p.x, p.y), fv));
        });
    add("slant-integrability",
        "<A_FTW V - A_FTV W, X> = <A_FW V - A_FV W, JX>: bracket closure of "
        "the slant cluster",
        false, false, false, true, true,
        [](const PointCtx& c, const Probes& p) {
          const Mat a_ftw = c.h.shape_for(c.tf.F * (c.tf.T * p.w));
          const Mat a_ftv = c.h.shape_for(c.tf.F * (c.tf.T * p.v));
          const Mat a_fw = c.h.shape_for(c.tf.F * p.w);
          const Mat a_fv = c.h.shape_for(c.tf.F * p.v);
          return std::abs(dot(a_ftw * p.v - a_ftv * p.w, p.x) -
                          dot(a_fw * p.v - a_fv * p.w, c.tf.T * p.x));
        });
    add("holomorphic-foliation-geodesic",
        "<h(X,Y),FTV> = <h(X,JY),FV>: holomorphic leaves totally geodesic",
        false, false, false, true, true,
        [](const PointCtx& c, const Probes& p) {
          return std::abs(
              dot(c.h.apply(p.x, p.y), c.tf.F * (c.tf.T * p.v)) -
              dot(c.h.apply(p.x, c.tf.T * p.y), c.tf.F * p.v));
        });
    add("slant-foliation-geodesic-strict",
        "<h(U,X),FTV> = <h(U,JX),FV>: slant leaves totally geodesic (fails "
        "whenever the warping is non-constant)",
        true, false, false, true, true,
        [](const PointCtx& c, const Probes& p) {
          return std::abs(
              dot(c.h.apply(p.v, p.x), c.tf.F * (c.tf.T * p.w)) -
              dot(c.h.apply(p.v, c.tf.T * p.x), c.tf.F * p.w));
        });
    add("slant-foliation-umbilic",
        "geodesy defect of the slant leaves equals the warping term "
        "sin^2(theta) X(lnf) <U,V>",
        false, true, true, true, true,
        [](const PointCtx& c, const Probes& p) {
          return std::abs(
              dot(c.h.apply(p.v, p.x), c.tf.F * (c.tf.T * p.w)) -
              dot(c.h.apply(p.v, c.tf.T * p.x), c.tf.F * p.w) +
              c.sin2 * c.xlnf(p.x) * dot(p.v, p.w));
        });
    add("shape-exchange-strict",
        "<A_FV W, X> = <A_FW V, X> (holds only when the slant angle is "
        "constant along the holomorphic factor)",
        true, false, false, true, true,
        [](const PointCtx& c, const Probes& p) {
          const Mat a_fv = c.h.shape_for(c.tf.F * p.v);
          const Mat a_fw = c.h.shape_for(c.tf.F * p.w);
          return std::abs(dot(a_fv * p.w - a_fw * p.v, p.x));
        });
    add("shape-exchange",
        "<A_FV W - A_FW V, X> = 2 X(lnf) <V,TW> on a warped product", false,
        true, true, true, true, [](const PointCtx& c, const Probes& p) {
          const Mat a_fv = c.h.shape_for(c.tf.F * p.v);
          const Mat a_fw = c.h.shape_for(c.tf.F * p.w);
          return std::abs(dot(a_fv * p.w - a_fw * p.v, p.x) -
                          2.0 * c.xlnf(p.x) * dot(p.v, c.tf.T * p.w));
        });
    add("shape-transfer-strict",
        "<A_FTW V, X> = -JX(lnf)<TW,V> - cos^2(theta) X(lnf) <V,W> "
        "(sign-flipped variant; fails on the built-in warped example)",
        true, true, true, true, true,
        [](const PointCtx& c, const Probes& p) {
          const Vec tw = c.tf.T * p.w;
          const Mat a = c.h.shape_for(c.tf.F * tw);
          const double jx = c.xlnf(c.tf.T * p.x);
          return std::abs(dot(a * p.v, p.x) + jx * dot(tw, p.v) +
                          c.lam * c.xlnf(p.x) * dot(p.v, p.w));
        });
    add("shape-transfer",
        "<A_FTW V, X> = -JX(lnf)<TW,V> + cos^2(theta) X(lnf) <V,W> on a "
        "warped product",
        false, true, true, true, true,
        [](const PointCtx& c, const Probes& p) {
          const Vec tw = c.tf.T * p.w;
          const Mat a = c.h.shape_for(c.tf.F * tw);
          const double jx = c.xlnf(c.tf.T * p.x);
          return std::abs(dot(a * p.v, p.x) + jx * dot(tw, p.v) -
                          c.lam * c.xlnf(p.x) * dot(p.v, p.w));
        });
    add("shape-transfer-j-strict",
        "<A_FW V, JX> = X(lnf)<W,V> + JX(lnf)<V,TW> (sign-flipped variant; "
        "fails on the built-in warped example)",
        true, true, true, true, true,
        [](const PointCtx& c, const Probes& p) {
          const Mat a = c.h.shape_for(c.tf.F * p.w);
          const double jx = c.xlnf(c.tf.T * p.x);
          return std::abs(dot(a * p.v, c.tf.T * p.x) -
                          c.xlnf(p.x) * dot(p.w, p.v) -
                          jx * dot(p.v, c.tf.T * p.w));
        });
    add("shape-transfer-j",
        "<A_FW V, JX> = X(lnf)<W,V> - JX(lnf)<V,TW> on a warped product",
        false, true, true, true, true,
        [](const PointCtx& c, const Probes& p) {
          const Mat a = c.h.shape_for(c.tf.F * p.w);
          const double jx = c.xlnf(c.tf.T * p.x);
          return std::abs(dot(a * p.v, c.tf.T * p.x) -
                          c.xlnf(p.x) * dot(p.w, p.v) +
                          jx * dot(p.v, c.tf.T * p.w));
        });
    add("mixed-holomorphic-flat",
        "<h(X,Y),FV> = 0 for holomorphic X,Y and slant V", false, false,
        false, true, true, [](const PointCtx& c, const Probes& p) {
          return std::abs(dot(c.h.apply(p.x, p.y), c.tf.F * p.v));
        });
    add("mixed-warping",
        "<h(X,V),FW> = -JX(lnf)<V,W> - X(lnf)<V,TW> on a warped product",
        false, true, true, true, true,
        [](const PointCtx& c, const Probes& p) {
          const double jx = c.xlnf(c.tf.T * p.x);
          return std::abs(dot(c.h.apply(p.x, p.v), c.tf.F * p.w) +
                          jx * dot(p.v, p.w) +
                          c.xlnf(p.x) * dot(p.v, c.tf.T * p.w));
        });
    add("shape-range-slant",
        "A_FV X stays inside the slant cluster on a warped product", false,
        true, false, true, true, [](const PointCtx& c, const Probes& p) {
          const Mat a = c.h.shape_for(c.tf.F * p.v);
          return (c.holo.transpose() * (a * p.x)).norm();
        });
    add("product-criterion",
        "A_FTV X = A_FV JX: passes exactly when the structure is a local "
        "Riemannian product (constant warping)",
        true, false, false, true, true,
        [](const PointCtx& c, const Probes& p) {
          const Mat a_ftv = c.h.shape_for(c.tf.F * (c.tf.T * p.v));
          const Mat a_fv = c.h.shape_for(c.tf.F * p.v);
          return (a_ftv * p.x - a_fv * (c.tf.T * p.x)).norm();
        });
    add("warped-criterion-strict",
        "A_FTW X - A_FW JX = -(1+cos^2(theta)) X(lnf) W (stated sufficiency "
        "form; fails on the built-in warped example)",
        true, true, true, true, true,
        [](const PointCtx& c, const Probes& p) {
          const Mat a_ftw = c.h.shape_for(c.tf.F * (c.tf.T * p.w));
          const Mat a_fw = c.h.shape_for(c.tf.F * p.w);
          const Vec lhs = a_ftw * p.x - a_fw * (c.tf.T * p.x);
          return (lhs + (1.0 + c.lam) * c.xlnf(p.x) * p.w).norm();
        });
    add("warped-criterion",
        "A_FTW X - A_FW JX = -sin^2(theta) X(lnf) W on a warped product",
        false, true, true, true, true,
        [](const PointCtx& c, const Probes& p) {
          const Mat a_ftw = c.h.shape_for(c.tf.F * (c.tf.T * p.w));
          const Mat a_fw = c.h.shape_for(c.tf.F * p.w);
          const Vec lhs = a_ftw * p.x - a_fw * (c.tf.T * p.x);
          return (lhs + c.sin2 * c.xlnf(p.x) * p.w).norm();
        });
    add("involutivity-holomorphic",
        "Lie brackets of holomorphic-cluster fields stay in the cluster",
        false, false, true, true, false, nullptr);
    add("involutivity-slant",
        "Lie brackets of slant-cluster fields stay in the cluster", false,
        false, true, false, true, nullptr);
    return d;
  }();
  return defs;
}

// frame-coordinate projector matrix of a cluster, and the chart-space field
// matrix M = frame_to_coord * P * coord_to_frame used for bracket FD
struct ClusterFieldData {
  Mat field;       // k x k, column c = projected coordinate field e_c
  Mat complement;  // k x m_complement, frame coordinates
  Mat to_frame;    // coord_to_frame at the point
  int multiplicity = 0;
};

ClusterFieldData cluster_fields(const Immersion& imm,
                                const AmbientSpace& space, const Vec& point,
                                bool holomorphic, const Tolerances& tols,
                                int expected_multiplicity) {
  const ImmersionJet jet = jet2(imm, point);
  const PointFrame frame = build_frames(jet);
  const TFOperators tf = tf_operators(frame, space);
  const SlantSpectrum spec = slant_spectrum(tf, tols.cluster);
  const SlantCluster* cluster = holomorphic
                                    ? spec.unit_cluster(tols.angle)
                                    : spec.slant_cluster(tols.angle);
  if (!cluster)
    fail(ErrorCode::ProjectorDiscontinuity,
         "requested spectral cluster does not exist at a stencil point");
  if (expected_multiplicity > 0 &&
      cluster->multiplicity != expected_multiplicity)
    fail(ErrorCode::ProjectorDiscontinuity,
         "cluster multiplicity changes across the FD stencil");
  ClusterFieldData out;
  out.multiplicity = cluster->multiplicity;
  const Mat proj = cluster->basis * cluster->basis.transpose();
  out.field = frame.frame_to_coord * proj * frame.coord_to_frame;
  out.to_frame = frame.coord_to_frame;
  const int k = frame.tangent_dim();
  Mat comp(k, k - cluster->multiplicity);
  int col = 0;
  for (const SlantCluster& c : spec.clusters) {
    if (&c == cluster) continue;
    comp.middleCols(col, c.multiplicity) = c.basis;
    col += c.multiplicity;
  }
  out.complement = comp;
  return out;
}

double involutivity_residual(const Immersion& imm, const AmbientSpace& space,
                             const Vec& point, bool holomorphic,
                             const Tolerances& tols) {
  const int k = imm.param_count();
  const ClusterFieldData center =
      cluster_fields(imm, space, point, holomorphic, tols, 0);
  if (center.multiplicity == k) return 0.0;  // no complement to leak into

  std::vector<Mat> dfield(k);  // d(field)/d(u_j)
  for (int j = 0; j < k; ++j) {
    Vec hi = point, lo = point;
    hi[j] += kFdStep;
    lo[j] -= kFdStep;
    const ClusterFieldData a =
        cluster_fields(imm, space, hi, holomorphic, tols, center.multiplicity);
    const ClusterFieldData b =
        cluster_fields(imm, space, lo, holomorphic, tols, center.multiplicity);
    dfield[j] = (a.field - b.field) / (2.0 * kFdStep);
  }

  double worst = 0.0;
  for (int c = 0; c < k; ++c) {
    const Vec wc = center.field.col(c);
    const double nc = (center.to_frame * wc).norm();
    if (nc < 1e-8) continue;
    for (int d = c + 1; d < k; ++d) {
      const Vec wd = center.field.col(d);
      const double nd = (center.to_frame * wd).norm();
      if (nd < 1e-8) continue;
      Vec bracket = Vec::Zero(k);
      for (int j = 0; j < k; ++j)
        bracket += wc[j] * dfield[j].col(d) - wd[j] * dfield[j].col(c);
      const Vec leak =
          center.complement.transpose() * (center.to_frame * bracket);
      worst = std::max(worst, leak.norm() / (nc * nd));
    }
  }
  return worst;
}

}  // namespace

const std::vector<IdentityInfo>& identity_catalog() {
  static const std::vector<IdentityInfo> infos = [] {
    std::vector<IdentityInfo> out;
    for (const IdentityDef& def : identity_defs()) out.push_back(def.info);
    return out;
  }();
  return infos;
}

IdentityReport identity_suite(const Immersion& imm,
                              const std::optional<SplitSpec>& split,
                              const ResolvedGrid& grid,
                              const std::vector<std::string>& selection,
                              int probes, std::uint64_t seed,
                              const Tolerances& tols, int threads) {
  const auto& defs = identity_defs();
  std::vector<int> chosen;
  if (selection.empty()) {
    for (int i = 0; i < static_cast<int>(defs.size()); ++i) chosen.push_back(i);
  } else {
    for (const std::string& name : selection) {
      int found = -1;
      for (int i = 0; i < static_cast<int>(defs.size()); ++i)
        if (defs[i].info.name == name) found = i;
      if (found < 0)
        fail(ErrorCode::InvalidArgument, "unknown identity '" + name + "'");
      chosen.push_back(found);
    }
    std::sort(chosen.begin(), chosen.end());
    chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());
  }
  for (int i : chosen)
    if (defs[i].info.needs_split && !split)
      fail(ErrorCode::MissingSplit,
           "identity '" + defs[i].info.name +
               "' needs a base/fiber split; pass one or narrow the selection");
  if (probes < 1) fail(ErrorCode::InvalidArgument, "probes must be positive");

  const long long n = grid.size();
  if (n <= 0) fail(ErrorCode::InvalidArgument, "grid is empty");
  const AmbientSpace space = AmbientSpace::canonical(imm.complex_dim);
  std::optional<WarpingContext> ctx;
  if (split) ctx.emplace(imm, *split, grid.point(0));

  const int nid = static_cast<int>(defs.size());
  std::vector<std::vector<double>> residuals(
      n, std::vector<double>(nid, 0.0));
  std::vector<std::vector<bool>> applicable(
      n, std::vector<bool>(nid, false));

  parallel_for(n, threads, [&](long long idx) {
    const Vec p = grid.point(idx);
    PointCtx c;
    const ImmersionJet jet = jet2(imm, p);
    c.frame = build_frames(jet);
    c.tf = tf_operators(c.frame, space);
    c.spec = slant_spectrum(c.tf, tols.cluster);
    c.h = second_form(jet, c.frame);
    const SlantCluster* unit = c.spec.unit_cluster(tols.angle);
    const SlantCluster* slant = c.spec.slant_cluster(tols.angle);
    const int k = c.frame.tangent_dim();
    c.holo = unit ? unit->basis : Mat(k, 0);
    c.slant = slant ? slant->basis : Mat(k, 0);
    if (slant) {
      c.lam = std::clamp(slant->lambda, 0.0, 1.0);
      c.sin2 = 1.0 - c.lam;
    }
    if (ctx) {
      c.has_split = true;
      c.dlnf = ctx->dlnf_at(p);
    }

    const std::uint64_t point_seed = splitmix64(seed ^ static_cast<std::uint64_t>(idx));
    for (int id : chosen) {
      const IdentityDef& def = defs[id];
      const bool ok = (!def.needs_holo || c.holo.cols() > 0) &&
                      (!def.needs_slant || c.slant.cols() > 0) &&
                      (!def.info.needs_split || c.has_split);
      if (!ok) continue;
      applicable[idx][id] = true;
      if (!def.eval) {  // bracket-based involutivity checks
        residuals[idx][id] = involutivity_residual(
            imm, space, p, def.info.name == "involutivity-holomorphic", tols);
        continue;
      }
      ProbeRng rng(splitmix64(point_seed + static_cast<std::uint64_t>(id)));
      double worst = 0.0;
      for (int probe = 0; probe < probes; ++probe) {
        Probes pr;
        pr.x = c.holo.cols() ? Vec(c.holo * rng.sphere(static_cast<int>(c.holo.cols()))) : Vec::Zero(k);
        pr.y = c.holo.cols() ? Vec(c.holo * rng.sphere(static_cast<int>(c.holo.cols()))) : Vec::Zero(k);
        pr.v = c.slant.cols() ? Vec(c.slant * rng.sphere(static_cast<int>(c.slant.cols()))) : Vec::Zero(k);
        pr.w = c.slant.cols() ? Vec(c.slant * rng.sphere(static_cast<int>(c.slant.cols()))) : Vec::Zero(k);
        worst = std::max(worst, def.eval(c, pr));
      }
      residuals[idx][id] = worst;
    }
  });

  IdentityReport report;
  report.evaluated_points = n;
  report.seed = seed;
  report.probes = probes;
  report.passed = true;
  for (int id : chosen) {
    IdentityResult res;
    res.info = defs[id].info;
    res.tolerance = defs[id].info.fd_path ? tols.fd : tols.identity;
    for (long long i = 0; i < n; ++i) {
      if (!applicable[i][id]) continue;
      res.applicable = true;
      res.max_residual = std::max(res.max_residual, residuals[i][id]);
    }
    res.holds = !res.applicable || res.max_residual <= res.tolerance;
    if (!res.info.predicate && !res.holds) report.passed = false;
    report.results.push_back(std::move(res));
  }
  return report;
}

InvolutivityReport integrability_check(const Immersion& imm,
                                       bool holomorphic_cluster,
                                       const ResolvedGrid& grid,
                                       const Tolerances& tols, int threads) {
  const long long n = grid.size();
  if (n <= 0) fail(ErrorCode::InvalidArgument, "grid is empty");
  const AmbientSpace space = AmbientSpace::canonical(imm.complex_dim);
  std::vector<double> residuals(n, 0.0);
  parallel_for(n, threads, [&](long long i) {
    residuals[i] = involutivity_residual(imm, space, grid.point(i),
                                         holomorphic_cluster, tols);
  });
  InvolutivityReport report;
  report.cluster = holomorphic_cluster ? "holomorphic" : "slant";
  for (double r : residuals)
    report.max_residual = std::max(report.max_residual, r);
  report.holds = report.max_residual <= tols.fd;
  return report;
}

}  // namespace slantlab
