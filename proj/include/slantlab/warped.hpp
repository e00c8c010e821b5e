#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "slantlab/secondform.hpp"

namespace slantlab {

// Warping-function extraction over a Cartesian grid. The fiber block of the
// induced metric defines f via its [0][0] entry evaluated on the slice
// through the reference point: f(base) = sqrt(G_fiber[0][0](base, fiber_ref)).
class WarpingContext {
 public:
  WarpingContext(const Immersion& imm, const SplitSpec& split,
                 const Vec& reference_point);

  // f evaluated from the base coordinates of full_point
  double f_at(const Vec& full_point) const;
  // d(ln f)/d(param j), central differences over the base axes (step 1e-4);
  // zero on fiber axes
  Vec dlnf_at(const Vec& full_point) const;

  const SplitSpec& split() const { return split_; }
  const Vec& reference_point() const { return ref_; }

 private:
  const Immersion* imm_;
  SplitSpec split_;
  Vec ref_;
};

struct GradLnF {
  Vec grad;            // components over the base axes, in split order
  double norm_sq = 0;  // with respect to the induced base metric
};

// gradient of ln f in the induced base metric at full_point
GradLnF grad_lnf(const WarpingContext& ctx, const Mat& induced_metric,
                 const Vec& full_point);

struct WarpedReport {
  double offdiag_residual = 0;            // max |G_base,fiber|
  double base_independence_residual = 0;  // max |d_fiber G_base|
  std::vector<double> f_values;           // by grid index
  double f_reference = 0;
  double f_consistency_residual = 0;      // max |G_fiber - f^2 g2|
  std::vector<double> grad_lnf_sq;        // by grid index
  double connection_residual = 0;         // warped connection identity
  double hiepko_base_geodesic = 0;
  double hiepko_fiber_umbilical = 0;
  bool structurally_warped = false;
  bool passed = false;
};

WarpedReport detect_warped(const Immersion& imm, const SplitSpec& split,
                           const ResolvedGrid& grid, const Tolerances& tols,
                           int threads);

struct InequalityPointRecord {
  double lhs = 0;      // |h|^2
  double rhs = 0;      // 2 m2 (csc^2 + cot^2) |grad ln f|^2
  double margin = 0;   // lhs - rhs
  double theta = 0;
  double grad_sq = 0;
  bool skipped = false;  // slant angle outside the guard band
};

struct InequalityReport {
  std::vector<InequalityPointRecord> points;
  double min_margin = 0;
  long long skipped = 0;
  bool structurally_warped = false;
  // equality-case diagnostics (maxima over the grid vs the identity tol)
  double max_slant_block = 0;
  double max_holomorphic_block = 0;
  double max_mean_curvature = 0;
  bool slant_block_vanishes = false;
  bool holomorphic_block_vanishes = false;
  bool minimal = false;
  bool passed = false;
};

InequalityReport inequality_audit(const Immersion& imm, const SplitSpec& split,
                                  const ResolvedGrid& grid,
                                  const Tolerances& tols, int threads);

// --- identity suite ---------------------------------------------------------

struct IdentityInfo {
  std::string name;
  std::string description;
  bool predicate = false;    // reported, never gates the suite outcome
  bool needs_split = false;  // consumes directional derivatives of ln f
  bool fd_path = false;      // tolerance class: fd (else identity)
};

const std::vector<IdentityInfo>& identity_catalog();

struct IdentityResult {
  IdentityInfo info;
  bool applicable = false;
  double max_residual = 0;
  double tolerance = 0;
  bool holds = false;
};

struct IdentityReport {
  std::vector<IdentityResult> results;
  long long evaluated_points = 0;
  std::uint64_t seed = 0;
  int probes = 0;
  bool passed = false;
};

// selection: identity names, or empty for the full catalog
IdentityReport identity_suite(const Immersion& imm,
                              const std::optional<SplitSpec>& split,
                              const ResolvedGrid& grid,
                              const std::vector<std::string>& selection,
                              int probes, std::uint64_t seed,
                              const Tolerances& tols, int threads);

struct InvolutivityReport {
  std::string cluster;  // "holomorphic" or "slant"
  double max_residual = 0;
  bool holds = false;
};

// Lie-bracket closure of a spectral cluster: projects coordinate fields onto
// the cluster, differentiates them through the chart by central differences,
// and measures the bracket component in the complementary cluster.
InvolutivityReport integrability_check(const Immersion& imm,
                                       bool holomorphic_cluster,
                                       const ResolvedGrid& grid,
                                       const Tolerances& tols, int threads);

}  // namespace slantlab
