#include "slantlab/ambient.hpp"

namespace slantlab {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::InvalidDimension: return "InvalidDimension";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParseSyntax: return "ParseError";
    case ErrorCode::UnknownIdentifier: return "UnknownIdentifier";
    case ErrorCode::UnknownExample: return "UnknownExample";
    case ErrorCode::OddAmbientDimension: return "OddAmbientDimension";
    case ErrorCode::EvalDomain: return "DomainError";
    case ErrorCode::ImmersionDegenerate: return "ImmersionDegenerate";
    case ErrorCode::NumericalInstability: return "NumericalInstability";
    case ErrorCode::ZeroVector: return "ZeroVector";
    case ErrorCode::NotUnitNormal: return "NotUnitNormal";
    case ErrorCode::SlantAngleSingular: return "SlantAngleSingular";
    case ErrorCode::OddSlantDimension: return "OddSlantDimension";
    case ErrorCode::MissingSplit: return "MissingSplit";
    case ErrorCode::ProjectorDiscontinuity: return "ProjectorDiscontinuity";
    case ErrorCode::InvalidWarping: return "InvalidWarping";
  }
  return "Unknown";
}

bool is_usage_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidDimension:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::ParseSyntax:
    case ErrorCode::UnknownIdentifier:
    case ErrorCode::UnknownExample:
    case ErrorCode::OddAmbientDimension:
    case ErrorCode::MissingSplit:
      return true;
    default:
      return false;
  }
}

AmbientSpace AmbientSpace::canonical(int complex_dim) {
  if (complex_dim < 1)
    fail(ErrorCode::InvalidDimension,
         "complex dimension must be at least 1, got " +
             std::to_string(complex_dim));
  const int d = 2 * complex_dim;
  Mat j = Mat::Zero(d, d);
  for (int i = 0; i < complex_dim; ++i) {
    j(2 * i + 1, 2 * i) = 1.0;   // J e_{2i-1} = e_{2i}
    j(2 * i, 2 * i + 1) = -1.0;  // J e_{2i}   = -e_{2i-1}
  }
  return AmbientSpace(complex_dim, std::move(j));
}

Vec AmbientSpace::apply(const Vec& v) const {
  if (v.size() != real_dim())
    fail(ErrorCode::DimensionMismatch,
         "vector has length " + std::to_string(v.size()) + ", expected " +
             std::to_string(real_dim()));
  Vec out(v.size());
  for (int i = 0; i < n_; ++i) {
    out[2 * i] = -v[2 * i + 1];
    out[2 * i + 1] = v[2 * i];
  }
  return out;
}

}  // namespace slantlab
