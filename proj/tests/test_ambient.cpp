#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "slantlab/ambient.hpp"
#include "slantlab/rng.hpp"

using namespace slantlab;

TEST_CASE("canonical pairing for n=1") {
  const AmbientSpace space = AmbientSpace::canonical(1);
  CHECK(space.real_dim() == 2);
  CHECK(space.J()(0, 0) == 0.0);
  CHECK(space.J()(1, 0) == 1.0);
  CHECK(space.J()(0, 1) == -1.0);
  CHECK(space.J()(1, 1) == 0.0);
}

TEST_CASE("J squared is minus identity, exactly") {
  const AmbientSpace space = AmbientSpace::canonical(3);
  const Mat jj = space.J() * space.J();
  CHECK((jj + Mat::Identity(6, 6)).norm() == 0.0);
}

TEST_CASE("J is orthogonal and skew") {
  const AmbientSpace space = AmbientSpace::canonical(4);
  CHECK((space.J().transpose() * space.J() - Mat::Identity(8, 8)).norm() ==
        0.0);
  CHECK((space.J().transpose() + space.J()).norm() == 0.0);
}

TEST_CASE("inner products are preserved") {
  const AmbientSpace space = AmbientSpace::canonical(5);
  ProbeRng rng(31);
  for (int i = 0; i < 50; ++i) {
    const Vec x = rng.sphere(10);
    const Vec y = rng.sphere(10);
    CHECK(space.apply(x).dot(space.apply(y)) ==
          doctest::Approx(x.dot(y)).epsilon(1e-15));
    CHECK(space.apply(x).norm() == doctest::Approx(x.norm()).epsilon(1e-15));
    CHECK(space.apply(x).dot(x) == doctest::Approx(0.0).epsilon(1e-15));
  }
}

TEST_CASE("basis vectors map as e1 -> e2, e4 -> -e3") {
  const AmbientSpace space = AmbientSpace::canonical(2);
  Vec e1 = Vec::Zero(4), e4 = Vec::Zero(4);
  e1[0] = 1.0;
  e4[3] = 1.0;
  const Vec je1 = space.apply(e1);
  CHECK(je1[1] == 1.0);
  CHECK(je1.norm() == 1.0);
  const Vec je4 = space.apply(e4);
  CHECK(je4[2] == -1.0);
  CHECK(je4.norm() == 1.0);
}

TEST_CASE("applying J twice negates exactly") {
  const AmbientSpace space = AmbientSpace::canonical(6);
  ProbeRng rng(7);
  const Vec x = rng.sphere(12);
  CHECK((space.apply(space.apply(x)) + x).norm() == 0.0);
}

TEST_CASE("index-swap application matches the dense matrix bit for bit") {
  const AmbientSpace space = AmbientSpace::canonical(5);
  ProbeRng rng(11);
  for (int i = 0; i < 20; ++i) {
    const Vec x = rng.sphere(10);
    const Vec dense = space.J() * x;
    const Vec fast = space.apply(x);
    for (int c = 0; c < 10; ++c) CHECK(dense[c] == fast[c]);
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(AmbientSpace::canonical(0), Error);
  const AmbientSpace space = AmbientSpace::canonical(2);
  CHECK_THROWS_AS(space.apply(Vec::Zero(3)), Error);
  try {
    AmbientSpace::canonical(0);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidDimension);
  }
}
