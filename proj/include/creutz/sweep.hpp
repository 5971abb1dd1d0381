#pragma once

#include <functional>
#include <set>
#include <string>
#include <vector>

#include "creutz/params.hpp"

namespace creutz {

struct SweepAxis {
  std::string name;
  double min = 0.0;
  double max = 0.0;
  int count = 0;

  double value(int i) const { return count > 1 ? min + (max - min) * i / (count - 1) : min; }
};

// A 1- or 2-axis parameter scan plus the requested diagnostics.
struct SweepSpec {
  SweepAxis axis1;
  SweepAxis axis2;  // count == 0 for single-axis sweeps
  std::set<std::string> outputs;

  bool two_axes() const { return axis2.count > 0; }
  void validate() const;  // throws ConfigError
};

// Build a SweepSpec from the raw [sweep] entries of a config file.
// Recognized keys: axis1, axis2 ("name min max count") and outputs.
SweepSpec parse_sweep(const std::map<std::string, std::vector<std::string>>& raw);

// Deterministic worker pool: runs work(i) for i in [0, n) on `threads`
// threads; results must be written into index-addressed slots.
void parallel_for(int n, int threads, const std::function<void(int)>& work);

}  // namespace creutz
