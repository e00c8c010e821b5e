#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>

namespace slantlab {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class ErrorCode {
  InvalidArgument,
  InvalidDimension,
  DimensionMismatch,
  ParseSyntax,
  UnknownIdentifier,
  UnknownExample,
  OddAmbientDimension,
  EvalDomain,
  ImmersionDegenerate,
  NumericalInstability,
  ZeroVector,
  NotUnitNormal,
  SlantAngleSingular,
  OddSlantDimension,
  MissingSplit,
  ProjectorDiscontinuity,
  InvalidWarping,
};

const char* error_code_name(ErrorCode code);

// true for errors caused by bad user input (CLI exit 2), false for numerical
// failures (CLI exit 3)
bool is_usage_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

// Tolerance knobs shared across the geometry pipeline. Defaults: structural
// residuals (metric blocks) 1e-9, AD-path identities 1e-8, FD-path residuals
// 1e-5, inequality margin slack 1e-6, slant-angle guard band 1e-3 rad,
// eigenvalue clustering 1e-8, classification angle tolerance 1e-6.
struct Tolerances {
  double structural = 1e-9;
  double identity = 1e-8;
  double fd = 1e-5;
  double theta_guard = 1e-3;
  double cluster = 1e-8;
  double angle = 1e-6;
  double margin = 1e-6;
};

}  // namespace slantlab
