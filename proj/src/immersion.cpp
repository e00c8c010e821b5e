#include "slantlab/immersion.hpp"

#include <json.hpp>

#include <cstdio>

namespace slantlab {

namespace {

Immersion build(const std::string& name, std::vector<std::string> params,
                int complex_dim, const std::vector<std::string>& coord_text,
                std::string notes) {
  Immersion imm;
  imm.name = name;
  imm.params = std::move(params);
  imm.complex_dim = complex_dim;
  imm.domain_notes = std::move(notes);
  imm.coords.reserve(coord_text.size());
  for (std::size_t i = 0; i < coord_text.size(); ++i) {
    try {
      imm.coords.push_back(parse(coord_text[i], imm.params));
    } catch (const Error& e) {
      fail(e.code(), "coordinate " + std::to_string(i + 1) + ": " + e.what());
    }
  }
  return imm;
}

std::string format_radius(double r) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", r);
  return buf;
}

}  // namespace

ImmersionJet jet2(const Immersion& imm, const Vec& point) {
  if (point.size() != imm.param_count())
    fail(ErrorCode::DimensionMismatch,
         "point has length " + std::to_string(point.size()) + ", expected " +
             std::to_string(imm.param_count()));
  const int k = imm.param_count();
  const int d = imm.ambient_dim();
  ImmersionJet out;
  out.point = point;
  out.position = Vec(d);
  out.jacobian = Mat(d, k);
  out.coord_hessians.reserve(d);
  for (int c = 0; c < d; ++c) {
    Jet2 j;
    try {
      j = eval_jet2(imm.coords[c], point);
    } catch (const Error& e) {
      fail(e.code(), "coordinate " + std::to_string(c + 1) + " of '" +
                         imm.name + "': " + e.what());
    }
    out.position[c] = j.value;
    out.jacobian.row(c) = j.grad.transpose();
    out.coord_hessians.push_back(std::move(j.hess));
  }
  return out;
}

Mat induced_metric(const Immersion& imm, const Vec& point) {
  const ImmersionJet j = jet2(imm, point);
  return j.jacobian.transpose() * j.jacobian;
}

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names = {
      "example-3.1",       "example-5.1", "holomorphic-plane",
      "totally-real-plane", "circle",      "trivial-product"};
  return names;
}

Immersion get_example(const std::string& name) {
  if (name == "example-3.1")
    return build(name, {"t", "s", "u", "v"}, 3,
                 {"t", "s", "u", "sin(v)", "0", "cos(v)"},
                 "proper pointwise semi-slant for v in (0, pi/2)");
  if (name == "example-5.1")
    return build(name, {"t", "s", "u", "v"}, 5,
                 {"t*cos(u)", "s*cos(u)", "t*cos(v)", "s*cos(v)", "t*sin(u)",
                  "s*sin(u)", "t*sin(v)", "s*sin(v)", "u", "v"},
                 "t,s outside {0,1}; u,v in (0, pi/2); warped product over "
                 "base (t,s) with fiber (u,v)");
  if (name == "holomorphic-plane")
    return build(name, {"a", "b"}, 2, {"a", "b", "0", "0"},
                 "complex line in R^4");
  if (name == "totally-real-plane")
    return build(name, {"a", "b"}, 2, {"a", "0", "b", "0"},
                 "totally real plane in R^4");
  if (name == "circle") return make_circle(2.0);
  if (name == "trivial-product")
    return build(name, {"t", "s", "u", "v"}, 6,
                 {"t", "s", "2*cos(u)", "3*cos(u)", "2*cos(v)", "3*cos(v)",
                  "2*sin(u)", "3*sin(u)", "2*sin(v)", "3*sin(v)", "u", "v"},
                 "constant-warping control case: flat base (t,s), fiber "
                 "(u,v) frozen at scale (2,3)");
  fail(ErrorCode::UnknownExample, "unknown example '" + name + "'");
}

Immersion make_circle(double radius) {
  if (!(radius > 0.0))
    fail(ErrorCode::InvalidArgument, "circle radius must be positive");
  const std::string r = format_radius(radius);
  return build("circle", {"t"}, 1, {r + "*cos(t)", r + "*sin(t)"},
               "radius " + r + " circle in R^2");
}

GridSpec default_grid(const Immersion& imm) {
  if (imm.name == "example-3.1")
    return GridSpec::parse("t=0:0:1,s=0:0:1,u=0:0:1,v=0.1:1.5:15");
  if (imm.name == "example-5.1" || imm.name == "trivial-product")
    return GridSpec::parse("t=0.6:3.1:6,s=0.6:3.1:6,u=0.2:1.3:6,v=0.2:1.3:6");
  if (imm.name == "circle") return GridSpec::parse("t=0:3:7");
  std::string spec;
  for (std::size_t i = 0; i < imm.params.size(); ++i) {
    if (i) spec += ',';
    spec += imm.params[i] + "=-1:1:5";
  }
  return GridSpec::parse(spec);
}

Immersion load_spec_text(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCode::ParseSyntax,
         std::string("immersion spec is not valid JSON: ") + e.what());
  }
  if (!doc.is_object())
    fail(ErrorCode::ParseSyntax, "immersion spec must be a JSON object");
  for (const char* key : {"name", "params", "ambient_complex_dim", "coords"})
    if (!doc.contains(key))
      fail(ErrorCode::InvalidArgument,
           std::string("immersion spec is missing '") + key + "'");

  if (!doc["name"].is_string())
    fail(ErrorCode::InvalidArgument, "'name' must be a string");
  if (!doc["params"].is_array() || doc["params"].empty())
    fail(ErrorCode::InvalidArgument,
         "'params' must be a non-empty array of identifiers");
  if (!doc["ambient_complex_dim"].is_number_integer())
    fail(ErrorCode::InvalidArgument, "'ambient_complex_dim' must be an integer");
  if (!doc["coords"].is_array())
    fail(ErrorCode::InvalidArgument, "'coords' must be an array of strings");

  std::vector<std::string> params;
  for (const auto& p : doc["params"]) {
    if (!p.is_string())
      fail(ErrorCode::InvalidArgument, "'params' entries must be strings");
    params.push_back(p.get<std::string>());
  }
  for (std::size_t i = 0; i < params.size(); ++i)
    for (std::size_t j = i + 1; j < params.size(); ++j)
      if (params[i] == params[j])
        fail(ErrorCode::InvalidArgument,
             "duplicate parameter '" + params[i] + "'");

  const int n = doc["ambient_complex_dim"].get<int>();
  if (n < 1)
    fail(ErrorCode::InvalidDimension,
         "ambient complex dimension must be at least 1");

  std::vector<std::string> coord_text;
  for (const auto& c : doc["coords"]) {
    if (!c.is_string())
      fail(ErrorCode::InvalidArgument, "'coords' entries must be strings");
    coord_text.push_back(c.get<std::string>());
  }
  if (coord_text.size() % 2 != 0)
    fail(ErrorCode::OddAmbientDimension,
         "immersion has " + std::to_string(coord_text.size()) +
             " coordinates; the Kaehler ambient dimension must be even");
  if (static_cast<int>(coord_text.size()) != 2 * n)
    fail(ErrorCode::DimensionMismatch,
         "expected " + std::to_string(2 * n) + " coordinates, got " +
             std::to_string(coord_text.size()));
  if (static_cast<int>(params.size()) > 2 * n)
    fail(ErrorCode::InvalidArgument,
         "submanifold dimension exceeds the ambient dimension");

  std::string notes;
  if (doc.contains("domain_notes")) {
    if (!doc["domain_notes"].is_string())
      fail(ErrorCode::InvalidArgument, "'domain_notes' must be a string");
    notes = doc["domain_notes"].get<std::string>();
  }
  return build(doc["name"].get<std::string>(), std::move(params), n,
               coord_text, std::move(notes));
}

}  // namespace slantlab
