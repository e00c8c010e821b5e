#pragma once

#include <string>
#include <vector>

#include "slantlab/expr.hpp"
#include "slantlab/gridspec.hpp"
#include "slantlab/types.hpp"

namespace slantlab {

// Parametric map from a k-dimensional parameter box into R^{2n}, with each
// coordinate function held as an expression tree. Immutable once built.
struct Immersion {
  std::string name;
  std::vector<std::string> params;
  int complex_dim = 0;
  std::vector<Expr> coords;
  std::string domain_notes;

  int param_count() const { return static_cast<int>(params.size()); }
  int ambient_dim() const { return 2 * complex_dim; }
};

// 2-jet of the immersion at one parameter point: position, Jacobian columns
// (column j = d(phi)/d(u_j)) and per-coordinate Hessians (exactly symmetric).
struct ImmersionJet {
  Vec point;
  Vec position;
  Mat jacobian;
  std::vector<Mat> coord_hessians;  // one k x k matrix per ambient coordinate
};

ImmersionJet jet2(const Immersion& imm, const Vec& point);

// Gram matrix of the Jacobian columns at the point.
Mat induced_metric(const Immersion& imm, const Vec& point);

// built-in registry
const std::vector<std::string>& example_names();
Immersion get_example(const std::string& name);
Immersion make_circle(double radius);
GridSpec default_grid(const Immersion& imm);

// Immersion spec document: JSON object with keys `name`, `params`,
// `ambient_complex_dim`, `coords`, optional `domain_notes`.
Immersion load_spec_text(const std::string& json_text);

}  // namespace slantlab
