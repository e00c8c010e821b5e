#include "slantlab/secondform.hpp"

#include <cmath>

namespace slantlab {

Vec SecondForm::apply(const Vec& x, const Vec& y) const {
  Vec out(normal_dim);
  for (int a = 0; a < normal_dim; ++a) out[a] = x.dot(comp[a] * y);
  return out;
}

Mat SecondForm::shape_for(const Vec& normal) const {
  Mat a = Mat::Zero(tangent_dim, tangent_dim);
  for (int i = 0; i < normal_dim; ++i) a += normal[i] * comp[i];
  return a;
}

SecondForm second_form(const ImmersionJet& jet, const PointFrame& frame) {
  const int k = frame.tangent_dim();
  const int nn = frame.normal_dim();
  SecondForm h;
  h.tangent_dim = k;
  h.normal_dim = nn;
  h.comp.reserve(nn);
  // h(d_i, d_j) is the normal projection of the coordinate Hessian; both
  // tangent slots are then rotated into the orthonormal frame
  const Mat& w = frame.frame_to_coord;
  for (int a = 0; a < nn; ++a) {
    Mat hc(k, k);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        double acc = 0.0;
        for (int c = 0; c < frame.normal_frame.rows(); ++c)
          acc += frame.normal_frame(c, a) * jet.coord_hessians[c](i, j);
        hc(i, j) = acc;
      }
    Mat hf = w.transpose() * hc * w;
    hf = 0.5 * (hf + hf.transpose()).eval();
    for (int i = 1; i < k; ++i)
      for (int j = 0; j < i; ++j) hf(i, j) = hf(j, i);
    h.comp.push_back(std::move(hf));
  }
  return h;
}

Mat shape_operator(const SecondForm& h, const Vec& unit_normal) {
  if (unit_normal.size() != h.normal_dim)
    fail(ErrorCode::DimensionMismatch,
         "normal vector has length " + std::to_string(unit_normal.size()) +
             ", expected " + std::to_string(h.normal_dim));
  if (std::abs(unit_normal.norm() - 1.0) > 1e-10)
    fail(ErrorCode::NotUnitNormal, "shape operator requires a unit normal");
  return h.shape_for(unit_normal);
}

HInvariants h_invariants(const SecondForm& h, const SlantSpectrum& spectrum,
                         double angle_tol) {
  const int k = h.tangent_dim;
  HInvariants out;
  out.mean_curvature = Vec::Zero(h.normal_dim);
  for (int a = 0; a < h.normal_dim; ++a) {
    out.total_sq += h.comp[a].squaredNorm();
    out.mean_curvature[a] = h.comp[a].trace() / k;
  }
  out.mean_curvature_norm = out.mean_curvature.norm();

  const SlantCluster* unit = spectrum.unit_cluster(angle_tol);
  const int m1 = unit ? unit->multiplicity : 0;
  // cluster-adapted orthonormal basis: holomorphic block first
  Mat basis(k, k);
  int col = 0;
  if (unit) {
    basis.leftCols(m1) = unit->basis;
    col = m1;
  }
  for (const SlantCluster& c : spectrum.clusters) {
    if (&c == unit) continue;
    basis.middleCols(col, c.multiplicity) = c.basis;
    col += c.multiplicity;
  }
  for (int a = 0; a < h.normal_dim; ++a) {
    const Mat rotated = basis.transpose() * h.comp[a] * basis;
    out.holomorphic_sq += rotated.topLeftCorner(m1, m1).squaredNorm();
    out.slant_sq += rotated.bottomRightCorner(k - m1, k - m1).squaredNorm();
    out.mixed_sq += rotated.topRightCorner(m1, k - m1).squaredNorm();
  }
  return out;
}

AdaptedFrame adapted_frame(const PointFrame& frame, const TFOperators& tf,
                           const SlantSpectrum& spectrum, double theta_guard) {
  const SlantCluster* unit = spectrum.unit_cluster(1e-6);
  const SlantCluster* slant = nullptr;
  for (const SlantCluster& c : spectrum.clusters) {
    if (&c == unit) continue;
    if (slant)
      fail(ErrorCode::InvalidArgument,
           "spectrum has more than one non-holomorphic cluster");
    slant = &c;
  }
  if (!slant)
    fail(ErrorCode::SlantAngleSingular,
         "no proper slant cluster to build an adapted frame from");
  const double theta = slant->theta;
  const double half_pi = std::acos(0.0);
  if (theta <= theta_guard || theta >= half_pi - theta_guard)
    fail(ErrorCode::SlantAngleSingular,
         "slant angle " + std::to_string(theta) +
             " is outside the guard band");
  if (slant->multiplicity % 2 != 0)
    fail(ErrorCode::OddSlantDimension,
         "proper slant cluster has odd dimension " +
             std::to_string(slant->multiplicity));

  const double sec = 1.0 / std::cos(theta);
  const double csc = 1.0 / std::sin(theta);
  const int p = slant->multiplicity / 2;

  AdaptedFrame out;
  out.theta = theta;
  std::vector<Vec> chosen;  // frame coordinates of the pairs, in order
  Mat candidates = slant->basis;
  auto deflate = [&](Vec w) {
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& e : chosen) w -= e.dot(w) * e;
    return w;
  };
  for (int pair = 0; pair < p; ++pair) {
    int best = -1;
    double best_norm = 1e-8;
    Vec best_vec;
    for (int c = 0; c < candidates.cols(); ++c) {
      Vec w = deflate(candidates.col(c));
      const double n = w.norm();
      if (n > best_norm) {
        best_norm = n;
        best = c;
        best_vec = std::move(w);
      }
    }
    if (best < 0)
      fail(ErrorCode::NumericalInstability,
           "adapted frame construction lost rank");
    Vec e1 = best_vec / best_norm;
    Vec e2 = sec * (tf.T * e1);
    chosen.push_back(e1);
    chosen.push_back(e2);
    out.slant_pairs.emplace_back(frame.tangent_frame * e1,
                                 frame.tangent_frame * e2);
  }
  for (const Vec& e : chosen)
    out.slant_normals.push_back(frame.normal_frame * (csc * (tf.F * e)));
  if (unit)
    for (int c = 0; c < unit->basis.cols(); ++c)
      out.holomorphic.push_back(frame.tangent_frame * unit->basis.col(c));
  return out;
}

}  // namespace slantlab
