#include "slantlab/pointgeom.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "slantlab/parallel.hpp"

namespace slantlab {

namespace {

// Pivoted modified Gram-Schmidt with one re-orthogonalization pass.
// Returns an orthonormal basis of the column span (want columns), choosing
// the largest remaining column at every step.
Mat pivoted_orthonormalize(Mat cols, int want, double drop_tol) {
  const int rows = static_cast<int>(cols.rows());
  Mat q(rows, want);
  int built = 0;
  std::vector<bool> used(cols.cols(), false);
  for (int step = 0; step < want; ++step) {
    int best = -1;
    double best_norm = drop_tol;
    for (int c = 0; c < cols.cols(); ++c) {
      if (used[c]) continue;
      const double n = cols.col(c).norm();
      if (n > best_norm) {
        best_norm = n;
        best = c;
      }
    }
    if (best < 0) break;
    used[best] = true;
    Vec w = cols.col(best);
    for (int pass = 0; pass < 2; ++pass)
      for (int j = 0; j < built; ++j) w -= q.col(j).dot(w) * q.col(j);
    const double n = w.norm();
    if (n <= drop_tol) {
      --step;
      continue;
    }
    q.col(built) = w / n;
    // deflate the remaining columns
    for (int c = 0; c < cols.cols(); ++c)
      if (!used[c]) cols.col(c) -= q.col(built).dot(cols.col(c)) * q.col(built);
    ++built;
  }
  if (built != want)
    fail(ErrorCode::NumericalInstability,
         "could not build an orthonormal frame of rank " + std::to_string(want));
  return q;
}

std::string point_string(const Vec& p) {
  std::string s = "(";
  for (int i = 0; i < p.size(); ++i) {
    if (i) s += ", ";
    s += std::to_string(p[i]);
  }
  return s + ")";
}

bool is_nearly_one(double lambda, double tol) {
  return std::abs(lambda - 1.0) <= tol;
}
bool is_nearly_zero(double lambda, double tol) {
  return std::abs(lambda) <= tol;
}

}  // namespace

PointFrame build_frames(const ImmersionJet& jet) {
  const int d = static_cast<int>(jet.jacobian.rows());
  const int k = static_cast<int>(jet.jacobian.cols());

  PointFrame f;
  f.point = jet.point;
  f.coord_basis = jet.jacobian;
  f.induced_metric = jet.jacobian.transpose() * jet.jacobian;

  Eigen::SelfAdjointEigenSolver<Mat> gram(f.induced_metric);
  const double largest = gram.eigenvalues().maxCoeff();
  if (largest <= 0.0 || gram.eigenvalues().minCoeff() < 1e-12 * largest)
    fail(ErrorCode::ImmersionDegenerate,
         "jacobian is rank deficient at " + point_string(jet.point));

  f.tangent_frame = pivoted_orthonormalize(jet.jacobian, k, 1e-14);

  if (d > k) {
    // most independent projections of the standard basis vectors
    Mat resid = Mat::Identity(d, d) -
                f.tangent_frame * f.tangent_frame.transpose();
    f.normal_frame = pivoted_orthonormalize(std::move(resid), d - k, 1e-10);
  } else {
    f.normal_frame = Mat(d, 0);
  }

  f.coord_to_frame = f.tangent_frame.transpose() * jet.jacobian;
  f.frame_to_coord = f.coord_to_frame.inverse();
  return f;
}

TFOperators tf_operators(const PointFrame& frame, const AmbientSpace& space) {
  if (space.real_dim() != frame.tangent_frame.rows())
    fail(ErrorCode::DimensionMismatch,
         "ambient space dimension does not match the frame");
  const Mat& J = space.J();
  const Mat JE = J * frame.tangent_frame;
  TFOperators tf;
  tf.T = frame.tangent_frame.transpose() * JE;
  tf.F = frame.normal_frame.transpose() * JE;
  const Mat JN = J * frame.normal_frame;
  tf.B = frame.tangent_frame.transpose() * JN;
  tf.C = frame.normal_frame.transpose() * JN;
  return tf;
}

const SlantCluster* SlantSpectrum::unit_cluster(double tol) const {
  for (const SlantCluster& c : clusters)
    if (is_nearly_one(c.lambda, tol)) return &c;
  return nullptr;
}

const SlantCluster* SlantSpectrum::slant_cluster(double tol) const {
  if (clusters.size() == 1) return &clusters[0];
  const SlantCluster* found = nullptr;
  for (const SlantCluster& c : clusters) {
    if (is_nearly_one(c.lambda, tol)) continue;
    if (found) return nullptr;  // more than one candidate
    found = &c;
  }
  return found;
}

SlantSpectrum slant_spectrum(const TFOperators& tf, double cluster_tol) {
  const int k = static_cast<int>(tf.T.rows());
  Mat m = -tf.T * tf.T;
  m = 0.5 * (m + m.transpose()).eval();
  Eigen::SelfAdjointEigenSolver<Mat> eig(m);
  if (eig.info() != Eigen::Success)
    fail(ErrorCode::NumericalInstability, "eigendecomposition failed");

  const double guard = std::max(cluster_tol, 1e-10);
  for (int i = 0; i < k; ++i) {
    const double lambda = eig.eigenvalues()[i];
    if (lambda < -guard || lambda > 1.0 + guard)
      fail(ErrorCode::NumericalInstability,
           "eigenvalue " + std::to_string(lambda) +
               " of -T^2 is outside [0, 1]");
  }

  // descending eigenvalues with a deterministic sign convention
  Mat vectors(k, k);
  Vec values(k);
  for (int i = 0; i < k; ++i) {
    values[i] = eig.eigenvalues()[k - 1 - i];
    Vec col = eig.eigenvectors().col(k - 1 - i);
    for (int r = 0; r < k; ++r) {
      if (std::abs(col[r]) > 1e-12) {
        if (col[r] < 0.0) col = -col;
        break;
      }
    }
    vectors.col(i) = col;
  }

  SlantSpectrum spec;
  spec.dim = k;
  int start = 0;
  for (int i = 1; i <= k; ++i) {
    if (i < k && values[start] - values[i] < cluster_tol) continue;
    SlantCluster cluster;
    cluster.multiplicity = i - start;
    cluster.basis = vectors.middleCols(start, cluster.multiplicity);
    cluster.lambda = values.segment(start, cluster.multiplicity).mean();
    cluster.theta =
        std::acos(std::sqrt(std::clamp(cluster.lambda, 0.0, 1.0)));
    spec.clusters.push_back(std::move(cluster));
    start = i;
  }
  return spec;
}

double wirtinger_angle(const TFOperators& tf, const Vec& x) {
  const double n = x.norm();
  if (n < 1e-14)
    fail(ErrorCode::ZeroVector, "Wirtinger angle of the zero vector");
  const double c = (tf.T * x).norm() / n;
  return std::acos(std::clamp(c, 0.0, 1.0));
}

const char* tag_name(PointTag tag) {
  switch (tag) {
    case PointTag::Complex: return "complex-point";
    case PointTag::TotallyReal: return "totally-real-point";
    case PointTag::PointwiseSlant: return "pointwise-slant";
    case PointTag::CR: return "CR";
    case PointTag::PointwiseSemiSlant: return "pointwise-semi-slant";
    case PointTag::Generic: return "generic";
  }
  return "generic";
}

PointClass classify_point(const SlantSpectrum& spectrum, double angle_tol) {
  PointClass out;
  const auto& cs = spectrum.clusters;
  const SlantCluster* unit = spectrum.unit_cluster(angle_tol);
  out.m1 = unit ? unit->multiplicity : 0;
  out.m2 = spectrum.dim - out.m1;

  if (cs.size() == 1) {
    const double lambda = cs[0].lambda;
    if (is_nearly_one(lambda, angle_tol)) {
      out.tag = PointTag::Complex;
      out.theta = 0.0;
    } else if (is_nearly_zero(lambda, angle_tol)) {
      out.tag = PointTag::TotallyReal;
      out.theta = std::acos(0.0);
    } else {
      out.tag = PointTag::PointwiseSlant;
      out.theta = cs[0].theta;
    }
    return out;
  }
  if (cs.size() == 2 && is_nearly_one(cs[0].lambda, angle_tol)) {
    if (is_nearly_zero(cs[1].lambda, angle_tol)) {
      out.tag = PointTag::CR;
      out.theta = std::acos(0.0);
    } else if (!is_nearly_one(cs[1].lambda, angle_tol)) {
      out.tag = PointTag::PointwiseSemiSlant;
      out.theta = cs[1].theta;
    }
    return out;
  }
  return out;  // generic fallback
}

FieldReport classify_field(const Immersion& imm, const AmbientSpace& space,
                           const ResolvedGrid& grid, const Tolerances& tols,
                           int threads) {
  const long long n = grid.size();
  if (n <= 0) fail(ErrorCode::InvalidArgument, "grid is empty");

  FieldReport report;
  report.points.resize(n);
  parallel_for(n, threads, [&](long long i) {
    const ImmersionJet jet = jet2(imm, grid.point(i));
    const PointFrame frame = build_frames(jet);
    const TFOperators tf = tf_operators(frame, space);
    const SlantSpectrum spec = slant_spectrum(tf, tols.cluster);
    FieldPointRecord rec;
    rec.cls = classify_point(spec, tols.angle);
    rec.theta = rec.cls.theta ? *rec.cls.theta
                              : std::numeric_limits<double>::quiet_NaN();
    report.points[i] = std::move(rec);
  });

  report.uniform = true;
  const PointClass& first = report.points[0].cls;
  double tmin = std::numeric_limits<double>::infinity();
  double tmax = -std::numeric_limits<double>::infinity();
  for (const FieldPointRecord& rec : report.points) {
    if (rec.cls.tag != first.tag || rec.cls.m1 != first.m1 ||
        rec.cls.m2 != first.m2)
      report.uniform = false;
    if (std::isfinite(rec.theta)) {
      tmin = std::min(tmin, rec.theta);
      tmax = std::max(tmax, rec.theta);
    }
  }
  if (!std::isfinite(tmin)) tmin = tmax = 0.0;
  report.theta_min = tmin;
  report.theta_max = tmax;
  report.constant_theta = (tmax - tmin) < tols.angle;

  if (!report.uniform) {
    report.verdict = "structure-not-uniform";
    return report;
  }
  switch (first.tag) {
    case PointTag::Complex: report.verdict = "complex"; break;
    case PointTag::TotallyReal: report.verdict = "totally-real"; break;
    case PointTag::CR: report.verdict = "CR"; break;
    case PointTag::PointwiseSlant:
      report.verdict =
          report.constant_theta ? "slant (constant theta)" : "pointwise-slant";
      break;
    case PointTag::PointwiseSemiSlant:
      report.verdict = report.constant_theta ? "semi-slant (constant theta)"
                                             : "pointwise-semi-slant";
      break;
    case PointTag::Generic: report.verdict = "generic"; break;
  }
  return report;
}

}  // namespace slantlab
