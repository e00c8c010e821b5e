#pragma once

#include <utility>
#include <vector>

#include "slantlab/pointgeom.hpp"
#include "slantlab/types.hpp"

namespace slantlab {

// Second fundamental form in the orthonormal point frames:
// comp[alpha](i, j) = < h(E_i, E_j), N_alpha >, symmetric in (i, j).
struct SecondForm {
  int tangent_dim = 0;
  int normal_dim = 0;
  std::vector<Mat> comp;

  // normal components of h(x, y) for frame-coordinate tangent vectors
  Vec apply(const Vec& x, const Vec& y) const;
  // shape operator for an arbitrary (not necessarily unit) normal vector
  Mat shape_for(const Vec& normal) const;
};

SecondForm second_form(const ImmersionJet& jet, const PointFrame& frame);

// A_N for a unit normal N in normal-frame coordinates.
Mat shape_operator(const SecondForm& h, const Vec& unit_normal);

struct HInvariants {
  double total_sq = 0.0;        // |h|^2 over both frames
  double holomorphic_sq = 0.0;  // block on the lambda=1 cluster
  double slant_sq = 0.0;        // block on the complement
  double mixed_sq = 0.0;        // one mixed block (enters |h|^2 twice)
  Vec mean_curvature;           // normal-frame components
  double mean_curvature_norm = 0.0;
};

HInvariants h_invariants(const SecondForm& h, const SlantSpectrum& spectrum,
                         double angle_tol = 1e-6);

// Orthonormal frame adapted to a proper slant cluster: tangent pairs
// (e, sec(theta) T e), normals csc(theta) F e, plus the holomorphic block.
// All vectors are ambient.
struct AdaptedFrame {
  double theta = 0.0;
  std::vector<std::pair<Vec, Vec>> slant_pairs;
  std::vector<Vec> slant_normals;
  std::vector<Vec> holomorphic;
};

AdaptedFrame adapted_frame(const PointFrame& frame, const TFOperators& tf,
                           const SlantSpectrum& spectrum, double theta_guard);

}  // namespace slantlab
