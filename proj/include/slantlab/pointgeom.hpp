#pragma once

#include <optional>
#include <string>
#include <vector>

#include "slantlab/ambient.hpp"
#include "slantlab/gridspec.hpp"
#include "slantlab/immersion.hpp"
#include "slantlab/types.hpp"

namespace slantlab {

// Orthonormal tangent/normal frames and the induced metric at one point.
// coord_to_frame maps coordinate-basis components to frame components
// (it equals tangent_frame^T * jacobian); frame_to_coord is its inverse.
struct PointFrame {
  Vec point;
  Mat coord_basis;
  Mat tangent_frame;
  Mat normal_frame;
  Mat coord_to_frame;
  Mat frame_to_coord;
  Mat induced_metric;

  int tangent_dim() const { return static_cast<int>(tangent_frame.cols()); }
  int normal_dim() const { return static_cast<int>(normal_frame.cols()); }
};

PointFrame build_frames(const ImmersionJet& jet);

// Blocks of the ambient complex structure in the point frames:
//   J E = E T + N F,   J N = E B + N C.
struct TFOperators {
  Mat T, F, B, C;
};

TFOperators tf_operators(const PointFrame& frame, const AmbientSpace& space);

// Eigenstructure of -T^2 grouped into clusters; lambda = cos^2(theta).
struct SlantCluster {
  double lambda = 0.0;
  int multiplicity = 0;
  Mat basis;  // k x multiplicity, orthonormal, frame coordinates
  double theta = 0.0;
};

struct SlantSpectrum {
  std::vector<SlantCluster> clusters;  // lambdas strictly decreasing
  int dim = 0;

  // cluster with |lambda - 1| <= tol, if any
  const SlantCluster* unit_cluster(double tol) const;
  // the unique non-unit cluster if there are at most two clusters; for a
  // single-cluster spectrum this is that cluster
  const SlantCluster* slant_cluster(double tol) const;
};

SlantSpectrum slant_spectrum(const TFOperators& tf, double cluster_tol);

// arccos(|TX| / |X|) for X in frame coordinates
double wirtinger_angle(const TFOperators& tf, const Vec& x);

enum class PointTag {
  Complex,
  TotallyReal,
  PointwiseSlant,
  CR,
  PointwiseSemiSlant,
  Generic,
};

const char* tag_name(PointTag tag);

struct PointClass {
  PointTag tag = PointTag::Generic;
  int m1 = 0;  // dimension of the lambda = 1 cluster
  int m2 = 0;  // complementary dimension
  std::optional<double> theta;
};

PointClass classify_point(const SlantSpectrum& spectrum, double angle_tol);

struct FieldPointRecord {
  PointClass cls;
  double theta = 0.0;  // NaN when the class has no single angle
};

struct FieldReport {
  std::vector<FieldPointRecord> points;  // by grid index
  bool uniform = false;                  // same tag and cluster dimensions
  bool constant_theta = false;
  std::string verdict;
  double theta_min = 0.0;
  double theta_max = 0.0;
};

FieldReport classify_field(const Immersion& imm, const AmbientSpace& space,
                           const ResolvedGrid& grid, const Tolerances& tols,
                           int threads);

}  // namespace slantlab
