#pragma once

#include <string>
#include <vector>

#include "slantlab/types.hpp"

namespace slantlab {

// One scan axis: `name=start:stop:count`, values linspaced inclusive.
struct GridAxis {
  std::string name;
  double start = 0.0;
  double stop = 0.0;
  int count = 1;
};

// Comma-separated axes, Cartesian product. A grid bound to a parameter list
// enumerates points by a single index with the LAST axis varying fastest.
class GridSpec {
 public:
  static GridSpec parse(const std::string& text);

  const std::vector<GridAxis>& axes() const { return axes_; }
  std::string to_string() const;

 private:
  std::vector<GridAxis> axes_;
};

class ResolvedGrid {
 public:
  // axes must cover the parameter list exactly (each name once)
  ResolvedGrid(const GridSpec& spec, const std::vector<std::string>& params);

  long long size() const { return total_; }
  int param_count() const { return static_cast<int>(param_of_axis_.size()); }
  // parameter-ordered coordinates of the index-th grid point
  Vec point(long long index) const;
  double axis_value(int axis, int step) const;
  const GridSpec& spec() const { return spec_; }

 private:
  GridSpec spec_;
  std::vector<int> param_of_axis_;
  long long total_ = 0;
};

// "t=0,s=1.5,..." -> parameter-ordered vector; every parameter required
Vec parse_point(const std::string& text, const std::vector<std::string>& params);

// Base/fiber coordinate split, parsed from "base=t,s;fiber=u,v"
// (whitespace also accepted between the two groups).
struct SplitSpec {
  std::vector<int> base;   // parameter indices, ascending
  std::vector<int> fiber;

  static SplitSpec parse(const std::string& text,
                         const std::vector<std::string>& params);
  std::string to_string(const std::vector<std::string>& params) const;
};

}  // namespace slantlab
