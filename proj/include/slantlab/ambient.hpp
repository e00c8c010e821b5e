#pragma once

#include "slantlab/types.hpp"

namespace slantlab {

// Flat Kaehler ambient R^{2n} with the canonical complex structure in the
// consecutive-pair convention: J e_{2i-1} = e_{2i}, J e_{2i} = -e_{2i-1}.
// Immutable after construction.
class AmbientSpace {
 public:
  static AmbientSpace canonical(int complex_dim);

  int complex_dim() const { return n_; }
  int real_dim() const { return 2 * n_; }
  const Mat& J() const { return j_; }

  // J*v by index swapping; agrees bit-for-bit with the dense product.
  Vec apply(const Vec& v) const;

 private:
  AmbientSpace(int n, Mat j) : n_(n), j_(std::move(j)) {}
  int n_;
  Mat j_;
};

}  // namespace slantlab
