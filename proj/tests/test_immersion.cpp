#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "slantlab/immersion.hpp"
#include "slantlab/rng.hpp"

using namespace slantlab;

namespace {

Vec point4(double t, double s, double u, double v) {
  Vec p(4);
  p << t, s, u, v;
  return p;
}

Mat fd_jacobian(const Immersion& imm, const Vec& p, double h = 1e-6) {
  Mat out(imm.ambient_dim(), imm.param_count());
  for (int j = 0; j < imm.param_count(); ++j) {
    Vec hi = p, lo = p;
    hi[j] += h;
    lo[j] -= h;
    out.col(j) =
        (jet2(imm, hi).position - jet2(imm, lo).position) / (2.0 * h);
  }
  return out;
}

}  // namespace

TEST_CASE("registry contents") {
  CHECK(example_names().size() == 6);
  for (const std::string& name : example_names()) {
    const Immersion imm = get_example(name);
    CHECK(imm.name == name);
    CHECK(static_cast<int>(imm.coords.size()) == imm.ambient_dim());
    CHECK(imm.param_count() <= imm.ambient_dim());
  }
  CHECK_THROWS_AS(get_example("nonesuch"), Error);
  try {
    get_example("nonesuch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownExample);
  }
}

TEST_CASE("pinned positions") {
  const double third_pi = std::acos(0.5);
  const ImmersionJet a =
      jet2(get_example("example-3.1"), point4(0, 0, 0, third_pi));
  Vec expect_a(6);
  expect_a << 0, 0, 0, std::sqrt(3.0) / 2, 0, 0.5;
  CHECK((a.position - expect_a).norm() < 1e-15);

  const ImmersionJet b = jet2(get_example("example-5.1"), point4(2, 3, 0, 0));
  Vec expect_b(10);
  expect_b << 2, 3, 2, 3, 0, 0, 0, 0, 0, 0;
  CHECK((b.position - expect_b).norm() == 0.0);
}

TEST_CASE("pinned jacobian columns") {
  // d/du of example-5.1 at (2,3,0,0)
  const ImmersionJet j = jet2(get_example("example-5.1"), point4(2, 3, 0, 0));
  Vec du(10);
  du << 0, 0, 0, 0, 2, 3, 0, 0, 1, 0;
  CHECK((j.jacobian.col(2) - du).norm() == 0.0);
  CHECK(j.jacobian.col(2).squaredNorm() == 14.0);

  // d/dv of example-3.1 at v = pi/3
  const double third_pi = std::acos(0.5);
  const ImmersionJet a =
      jet2(get_example("example-3.1"), point4(0, 0, 0, third_pi));
  Vec dv(6);
  dv << 0, 0, 0, 0.5, 0, -std::sqrt(3.0) / 2;
  CHECK((a.jacobian.col(3) - dv).norm() < 1e-15);
}

TEST_CASE("circle jets by hand differentiation") {
  const Immersion circle = make_circle(2.0);
  Vec p(1);
  p << 0.0;
  const ImmersionJet j = jet2(circle, p);
  CHECK(j.jacobian(0, 0) == 0.0);
  CHECK(j.jacobian(1, 0) == 2.0);
  CHECK(j.coord_hessians[0](0, 0) == -2.0);
  CHECK(j.coord_hessians[1](0, 0) == 0.0);
}

TEST_CASE("hessians are symmetric exactly") {
  const Immersion imm = get_example("example-5.1");
  const ImmersionJet j = jet2(imm, point4(1.3, 0.4, 0.8, 0.2));
  for (const Mat& h : j.coord_hessians)
    for (int a = 0; a < 4; ++a)
      for (int b = 0; b < a; ++b) CHECK(h(a, b) == h(b, a));
}

TEST_CASE("AD jacobian matches finite differences on every builtin") {
  ProbeRng rng(17);
  for (const std::string& name : example_names()) {
    const Immersion imm = get_example(name);
    for (int trial = 0; trial < 100; ++trial) {
      Vec p(imm.param_count());
      for (int i = 0; i < p.size(); ++i) p[i] = rng.uniform(0.3, 1.4);
      const ImmersionJet j = jet2(imm, p);
      CHECK((j.jacobian - fd_jacobian(imm, p)).cwiseAbs().maxCoeff() < 1e-6);
    }
  }
}

TEST_CASE("example-5.1 metric is diag(2,2,m,m)") {
  const Immersion imm = get_example("example-5.1");
  ProbeRng rng(3);
  for (int trial = 0; trial < 25; ++trial) {
    const Vec p = point4(rng.uniform(0.3, 3), rng.uniform(0.3, 3),
                         rng.uniform(0.1, 1.4), rng.uniform(0.1, 1.4));
    const double m = p[0] * p[0] + p[1] * p[1] + 1.0;
    Mat expect = Mat::Zero(4, 4);
    expect.diagonal() << 2, 2, m, m;
    CHECK((induced_metric(imm, p) - expect).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("spec documents load and match built-ins") {
  const Immersion imm = load_spec_text(R"({
    "name": "plane",
    "params": ["a", "b"],
    "ambient_complex_dim": 2,
    "coords": ["a", "b", "0", "0"]
  })");
  CHECK(imm.param_count() == 2);
  const Immersion builtin = get_example("holomorphic-plane");
  Vec p(2);
  p << 0.3, -1.2;
  CHECK((jet2(imm, p).position - jet2(builtin, p).position).norm() == 0.0);
}

TEST_CASE("spec document errors") {
  // five coordinates: odd ambient dimension
  try {
    load_spec_text(R"({"name":"bad","params":["a"],
      "ambient_complex_dim":3,
      "coords":["a","a","a","a","a"]})");
    FAIL("expected OddAmbientDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OddAmbientDimension);
  }
  // coordinate count inconsistent with the declared dimension
  CHECK_THROWS_AS(load_spec_text(R"({"name":"bad","params":["a"],
      "ambient_complex_dim":3,"coords":["a","a","a","a"]})"),
                  Error);
  // parse failure reported with the coordinate index
  try {
    load_spec_text(R"({"name":"bad","params":["a"],
      "ambient_complex_dim":1,"coords":["a","a+*2"]})");
    FAIL("expected ParseError");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("coordinate 2") != std::string::npos);
  }
  // k > 2n
  CHECK_THROWS_AS(load_spec_text(R"({"name":"bad",
      "params":["a","b","c"],
      "ambient_complex_dim":1,"coords":["a","b"]})"),
                  Error);
  CHECK_THROWS_AS(load_spec_text("not json at all"), Error);
}

TEST_CASE("domain errors carry the coordinate index") {
  const Immersion imm = load_spec_text(R"x({"name":"logs","params":["a"],
      "ambient_complex_dim":1,"coords":["log(a)","a"]})x");
  Vec p(1);
  p << -1.0;
  try {
    jet2(imm, p);
    FAIL("expected DomainError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EvalDomain);
    CHECK(std::string(e.what()).find("coordinate 1") != std::string::npos);
  }
}

TEST_CASE("trivial product has a constant product metric") {
  const Immersion imm = get_example("trivial-product");
  CHECK(imm.ambient_dim() == 12);
  ProbeRng rng(9);
  Mat expect = Mat::Zero(4, 4);
  expect.diagonal() << 1, 1, 14, 14;
  for (int trial = 0; trial < 10; ++trial) {
    const Vec p = point4(rng.uniform(-2, 2), rng.uniform(-2, 2),
                         rng.uniform(0.1, 1.4), rng.uniform(0.1, 1.4));
    CHECK((induced_metric(imm, p) - expect).cwiseAbs().maxCoeff() < 1e-12);
  }
}
