#pragma once

#include "slantlab/types.hpp"

namespace slantlab {

// Second-order truncated Taylor value: f, its gradient and its Hessian with
// respect to k parameters. Arithmetic propagates exact analytic derivatives
// (forward mode). All operations keep the Hessian exactly symmetric: every
// formula below writes entry (i,j) and (j,i) from the same IEEE expressions.
struct Jet2 {
  double value = 0.0;
  Vec grad;
  Mat hess;

  Jet2() = default;
  explicit Jet2(int k)
      : value(0.0), grad(Vec::Zero(k)), hess(Mat::Zero(k, k)) {}

  int dim() const { return static_cast<int>(grad.size()); }

  static Jet2 constant(int k, double c) {
    Jet2 j(k);
    j.value = c;
    return j;
  }

  // the i-th parameter seeded at x
  static Jet2 variable(int k, int index, double x) {
    Jet2 j(k);
    j.value = x;
    j.grad[index] = 1.0;
    return j;
  }
};

Jet2 operator+(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a, const Jet2& b);
Jet2 operator-(const Jet2& a);
Jet2 operator*(const Jet2& a, const Jet2& b);
Jet2 operator/(const Jet2& a, const Jet2& b);

Jet2 sin(const Jet2& a);
Jet2 cos(const Jet2& a);
Jet2 tan(const Jet2& a);
Jet2 exp(const Jet2& a);
Jet2 log(const Jet2& a);
Jet2 sqrt(const Jet2& a);

// x^n by repeated multiplication (exact for integer exponents, any sign of x)
Jet2 pow_int(const Jet2& a, long long n);
// general exponent via exp(b*log(a)); requires a.value > 0
Jet2 pow(const Jet2& a, const Jet2& b);

}  // namespace slantlab
