#include "slantlab/gridspec.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

namespace slantlab {

namespace {

std::vector<std::string> split_on(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find(sep, start);
    if (end == std::string::npos) end = text.size();
    parts.push_back(text.substr(start, end - start));
    start = end + 1;
  }
  return parts;
}

std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t");
  return s.substr(a, b - a + 1);
}

double parse_number(const std::string& s, const std::string& what) {
  char* end = nullptr;
  const std::string t = trim(s);
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size())
    fail(ErrorCode::InvalidArgument, "invalid " + what + " '" + s + "'");
  return v;
}

int find_param(const std::string& name, const std::vector<std::string>& params,
               const std::string& context) {
  for (int i = 0; i < static_cast<int>(params.size()); ++i)
    if (params[i] == name) return i;
  fail(ErrorCode::InvalidArgument,
       "unknown parameter '" + name + "' in " + context);
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

GridSpec GridSpec::parse(const std::string& text) {
  GridSpec g;
  for (const std::string& raw : split_on(text, ',')) {
    const std::string part = trim(raw);
    if (part.empty())
      fail(ErrorCode::InvalidArgument, "empty grid axis in '" + text + "'");
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::InvalidArgument,
           "grid axis '" + part + "' must look like name=start:stop:count");
    GridAxis axis;
    axis.name = trim(part.substr(0, eq));
    const std::vector<std::string> nums = split_on(part.substr(eq + 1), ':');
    if (nums.size() != 3)
      fail(ErrorCode::InvalidArgument,
           "grid axis '" + part + "' must look like name=start:stop:count");
    axis.start = parse_number(nums[0], "grid start");
    axis.stop = parse_number(nums[1], "grid stop");
    const double c = parse_number(nums[2], "grid count");
    if (c < 1 || c != static_cast<int>(c))
      fail(ErrorCode::InvalidArgument,
           "grid count must be a positive integer in '" + part + "'");
    axis.count = static_cast<int>(c);
    g.axes_.push_back(std::move(axis));
  }
  if (g.axes_.empty())
    fail(ErrorCode::InvalidArgument, "grid has no axes");
  return g;
}

std::string GridSpec::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < axes_.size(); ++i) {
    if (i) out += ',';
    out += axes_[i].name + "=" + format_number(axes_[i].start) + ":" +
           format_number(axes_[i].stop) + ":" + std::to_string(axes_[i].count);
  }
  return out;
}

ResolvedGrid::ResolvedGrid(const GridSpec& spec,
                           const std::vector<std::string>& params)
    : spec_(spec) {
  std::set<std::string> seen;
  for (const GridAxis& axis : spec.axes()) {
    if (!seen.insert(axis.name).second)
      fail(ErrorCode::InvalidArgument,
           "duplicate grid axis '" + axis.name + "'");
    param_of_axis_.push_back(find_param(axis.name, params, "grid"));
  }
  if (param_of_axis_.size() != params.size())
    fail(ErrorCode::InvalidArgument,
         "grid must name every immersion parameter exactly once");
  total_ = 1;
  for (const GridAxis& axis : spec.axes()) total_ *= axis.count;
}

double ResolvedGrid::axis_value(int axis, int step) const {
  const GridAxis& a = spec_.axes()[axis];
  if (a.count == 1) return a.start;
  return a.start + (a.stop - a.start) * step / (a.count - 1);
}

Vec ResolvedGrid::point(long long index) const {
  const int na = static_cast<int>(spec_.axes().size());
  Vec p(param_count());
  long long rest = index;
  for (int axis = na - 1; axis >= 0; --axis) {
    const int count = spec_.axes()[axis].count;
    const int step = static_cast<int>(rest % count);
    rest /= count;
    p[param_of_axis_[axis]] = axis_value(axis, step);
  }
  return p;
}

Vec parse_point(const std::string& text,
                const std::vector<std::string>& params) {
  Vec p(params.size());
  std::vector<bool> set(params.size(), false);
  for (const std::string& raw : split_on(text, ',')) {
    const std::string part = trim(raw);
    if (part.empty())
      fail(ErrorCode::InvalidArgument, "empty assignment in point '" + text + "'");
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::InvalidArgument,
           "point entry '" + part + "' must look like name=value");
    const int i = find_param(trim(part.substr(0, eq)), params, "point");
    if (set[i])
      fail(ErrorCode::InvalidArgument,
           "parameter '" + params[i] + "' given twice in point");
    p[i] = parse_number(part.substr(eq + 1), "point value");
    set[i] = true;
  }
  for (std::size_t i = 0; i < params.size(); ++i)
    if (!set[i])
      fail(ErrorCode::InvalidArgument,
           "point is missing parameter '" + params[i] + "'");
  return p;
}

SplitSpec SplitSpec::parse(const std::string& text,
                           const std::vector<std::string>& params) {
  std::string normalized = text;
  std::replace(normalized.begin(), normalized.end(), ' ', ';');
  SplitSpec out;
  bool saw_base = false, saw_fiber = false;
  for (const std::string& raw : split_on(normalized, ';')) {
    const std::string part = trim(raw);
    if (part.empty()) continue;
    const std::size_t eq = part.find('=');
    if (eq == std::string::npos)
      fail(ErrorCode::InvalidArgument,
           "split group '" + part + "' must look like base=... or fiber=...");
    const std::string key = trim(part.substr(0, eq));
    std::vector<int>* dest = nullptr;
    if (key == "base") {
      dest = &out.base;
      saw_base = true;
    } else if (key == "fiber") {
      dest = &out.fiber;
      saw_fiber = true;
    } else {
      fail(ErrorCode::InvalidArgument, "unknown split group '" + key + "'");
    }
    for (const std::string& name : split_on(part.substr(eq + 1), ',')) {
      const std::string n = trim(name);
      if (n.empty()) continue;
      dest->push_back(find_param(n, params, "split"));
    }
  }
  if (!saw_base || !saw_fiber)
    fail(ErrorCode::InvalidArgument, "split must name base and fiber groups");
  if (out.base.empty() || out.fiber.empty())
    fail(ErrorCode::InvalidArgument, "split groups must be non-empty");
  std::sort(out.base.begin(), out.base.end());
  std::sort(out.fiber.begin(), out.fiber.end());
  std::vector<int> all = out.base;
  all.insert(all.end(), out.fiber.begin(), out.fiber.end());
  std::sort(all.begin(), all.end());
  for (std::size_t i = 0; i < all.size(); ++i)
    if (all[i] != static_cast<int>(i))
      fail(ErrorCode::InvalidArgument,
           "split must partition the parameters into disjoint base and fiber");
  if (all.size() != params.size())
    fail(ErrorCode::InvalidArgument,
         "split must partition the parameters into disjoint base and fiber");
  return out;
}

std::string SplitSpec::to_string(const std::vector<std::string>& params) const {
  std::string out = "base=";
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (i) out += ',';
    out += params[base[i]];
  }
  out += ";fiber=";
  for (std::size_t i = 0; i < fiber.size(); ++i) {
    if (i) out += ',';
    out += params[fiber[i]];
  }
  return out;
}

}  // namespace slantlab
