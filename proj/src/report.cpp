#include "slantlab/report.hpp"

#include <cmath>
#include <cstdio>

#include "slantlab/types.hpp"

namespace slantlab {

namespace {

void escape_string(const std::string& s, std::string& out) {
  out += '"';
  for (char ch : s) {
    switch (ch) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          out += buf;
        } else {
          out += ch;
        }
    }
  }
  out += '"';
}

void dump(const nlohmann::json& j, std::string& out) {
  switch (j.type()) {
    case nlohmann::json::value_t::null: out += "null"; break;
    case nlohmann::json::value_t::boolean:
      out += j.get<bool>() ? "true" : "false";
      break;
    case nlohmann::json::value_t::number_integer:
      out += std::to_string(j.get<long long>());
      break;
    case nlohmann::json::value_t::number_unsigned:
      out += std::to_string(j.get<unsigned long long>());
      break;
    case nlohmann::json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
      } else {
        out += format_double(v);
      }
      break;
    }
    case nlohmann::json::value_t::string:
      escape_string(j.get_ref<const std::string&>(), out);
      break;
    case nlohmann::json::value_t::array: {
      out += '[';
      bool first = true;
      for (const auto& item : j) {
        if (!first) out += ',';
        first = false;
        dump(item, out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      for (auto it = j.cbegin(); it != j.cend(); ++it) {
        if (!first) out += ',';
        first = false;
        escape_string(it.key(), out);
        out += ':';
        dump(it.value(), out);
      }
      out += '}';
      break;
    }
    default:
      fail(ErrorCode::InvalidArgument, "unsupported JSON value");
  }
}

void csv_cell(const nlohmann::json& v, std::string& out) {
  if (v.is_number_float())
    out += format_double(v.get<double>());
  else if (v.is_number_integer())
    out += std::to_string(v.get<long long>());
  else if (v.is_boolean())
    out += v.get<bool>() ? "1" : "0";
  else if (v.is_string())
    out += v.get<std::string>();
  else
    out += "";
}

}  // namespace

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string dump_json(const nlohmann::json& j) {
  std::string out;
  dump(j, out);
  out += '\n';
  return out;
}

std::string report_csv(const nlohmann::json& report) {
  const std::string command = report.value("command", "");
  if (command != "scan" && command != "audit-inequality")
    fail(ErrorCode::InvalidArgument,
         "CSV output is only available for scan and audit-inequality");
  if (!report.contains("payload") || !report["payload"].contains("points"))
    fail(ErrorCode::InvalidArgument, "report has no per-point payload");

  const auto& payload = report["payload"];
  const auto& params = payload["params"];
  std::string out = "index";
  for (const auto& p : params) out += "," + p.get<std::string>();
  std::vector<std::string> columns;
  if (command == "scan") {
    columns = {"tag", "m1", "m2", "theta"};
  } else {
    columns = {"lhs", "rhs", "margin", "theta", "grad_lnf_sq", "skipped"};
  }
  for (const auto& c : columns) out += "," + c;
  out += '\n';

  for (const auto& point : payload["points"]) {
    csv_cell(point["index"], out);
    for (const auto& coord : point["point"]) {
      out += ',';
      csv_cell(coord, out);
    }
    for (const auto& c : columns) {
      out += ',';
      csv_cell(point.contains(c) ? point[c] : nlohmann::json(), out);
    }
    out += '\n';
  }
  return out;
}

}  // namespace slantlab
