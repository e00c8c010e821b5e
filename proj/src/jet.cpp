#include "slantlab/jet.hpp"

#include <cmath>

namespace slantlab {

namespace {

// f(u) with first and second derivative values at u.value
Jet2 chain(const Jet2& u, double f, double df, double ddf) {
  Jet2 r(u.dim());
  r.value = f;
  r.grad = df * u.grad;
  r.hess = df * u.hess + ddf * (u.grad * u.grad.transpose());
  return r;
}

// copy the upper triangle onto the lower one so symmetry is exact, not
// merely up to the last ulp of a reordered sum
void mirror_upper(Mat& h) {
  const int k = static_cast<int>(h.rows());
  for (int i = 1; i < k; ++i)
    for (int j = 0; j < i; ++j) h(i, j) = h(j, i);
}

}  // namespace

Jet2 operator+(const Jet2& a, const Jet2& b) {
  Jet2 r(a.dim());
  r.value = a.value + b.value;
  r.grad = a.grad + b.grad;
  r.hess = a.hess + b.hess;
  return r;
}

Jet2 operator-(const Jet2& a, const Jet2& b) {
  Jet2 r(a.dim());
  r.value = a.value - b.value;
  r.grad = a.grad - b.grad;
  r.hess = a.hess - b.hess;
  return r;
}

Jet2 operator-(const Jet2& a) {
  Jet2 r(a.dim());
  r.value = -a.value;
  r.grad = -a.grad;
  r.hess = -a.hess;
  return r;
}

Jet2 operator*(const Jet2& a, const Jet2& b) {
  Jet2 r(a.dim());
  r.value = a.value * b.value;
  r.grad = a.value * b.grad + b.value * a.grad;
  r.hess = a.value * b.hess + b.value * a.hess +
           a.grad * b.grad.transpose() + b.grad * a.grad.transpose();
  mirror_upper(r.hess);
  return r;
}

Jet2 operator/(const Jet2& a, const Jet2& b) {
  if (b.value == 0.0) fail(ErrorCode::EvalDomain, "division by zero");
  const double w = 1.0 / b.value;
  Jet2 inv(b.dim());
  inv.value = w;
  inv.grad = (-w * w) * b.grad;
  inv.hess = (-w * w) * b.hess +
             (2.0 * w * w * w) * (b.grad * b.grad.transpose());
  return a * inv;
}

Jet2 sin(const Jet2& a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return chain(a, s, c, -s);
}

Jet2 cos(const Jet2& a) {
  const double s = std::sin(a.value), c = std::cos(a.value);
  return chain(a, c, -s, -c);
}

Jet2 tan(const Jet2& a) {
  const double t = std::tan(a.value);
  const double sec2 = 1.0 + t * t;
  return chain(a, t, sec2, 2.0 * t * sec2);
}

Jet2 exp(const Jet2& a) {
  const double e = std::exp(a.value);
  return chain(a, e, e, e);
}

Jet2 log(const Jet2& a) {
  if (a.value <= 0.0)
    fail(ErrorCode::EvalDomain, "log of non-positive argument");
  const double w = 1.0 / a.value;
  return chain(a, std::log(a.value), w, -w * w);
}

Jet2 sqrt(const Jet2& a) {
  if (a.value < 0.0)
    fail(ErrorCode::EvalDomain, "sqrt of negative argument");
  const double s = std::sqrt(a.value);
  const double d = 0.5 / s;
  return chain(a, s, d, -0.5 * d / a.value);
}

Jet2 pow_int(const Jet2& a, long long n) {
  if (n == 0) return Jet2::constant(a.dim(), 1.0);
  if (n < 0) {
    Jet2 p = pow_int(a, -n);
    return Jet2::constant(a.dim(), 1.0) / p;
  }
  Jet2 r = a;
  for (long long i = 1; i < n; ++i) r = r * a;
  return r;
}

Jet2 pow(const Jet2& a, const Jet2& b) { return exp(b * log(a)); }

}  // namespace slantlab
