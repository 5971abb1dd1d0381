#include "creutz/sweep.hpp"

#include <atomic>
#include <thread>

namespace creutz {

namespace {

SweepAxis parse_axis(const std::string& key, const std::vector<std::string>& tokens) {
  if (tokens.size() != 4)
    throw ConfigError(key + " needs 'name min max count', got " + std::to_string(tokens.size()) +
                      " tokens");
  SweepAxis axis;
  axis.name = tokens[0];
  try {
    axis.min = std::stod(tokens[1]);
    axis.max = std::stod(tokens[2]);
    axis.count = std::stoi(tokens[3]);
  } catch (const std::exception&) {
    throw ConfigError(key + ": invalid numeric token");
  }
  return axis;
}

const std::set<std::string> kKnownOutputs = {"bands",    "winding", "gapclass", "edge",
                                             "dipr",     "boundaries", "bbc"};

}  // namespace

void SweepSpec::validate() const {
  if (!is_sweepable_field(axis1.name))
    throw ConfigError("axis1: '" + axis1.name + "' is not a sweepable parameter");
  if (axis1.count < 2) throw ConfigError("axis1: count >= 2 required");
  if (two_axes()) {
    if (!is_sweepable_field(axis2.name))
      throw ConfigError("axis2: '" + axis2.name + "' is not a sweepable parameter");
    if (axis2.count < 2) throw ConfigError("axis2: count >= 2 required");
    if (axis1.name == axis2.name) throw ConfigError("axis names must be distinct");
  }
  for (const auto& o : outputs)
    if (!kKnownOutputs.count(o)) throw ConfigError("unknown output '" + o + "'");
}

SweepSpec parse_sweep(const std::map<std::string, std::vector<std::string>>& raw) {
  SweepSpec spec;
  bool have1 = false;
  for (const auto& [key, tokens] : raw) {
    if (key == "axis1") {
      spec.axis1 = parse_axis(key, tokens);
      have1 = true;
    } else if (key == "axis2") {
      spec.axis2 = parse_axis(key, tokens);
    } else if (key == "outputs") {
      spec.outputs.insert(tokens.begin(), tokens.end());
    } else {
      throw ConfigError("unknown [sweep] key '" + key + "'");
    }
  }
  if (!have1) throw ConfigError("[sweep] requires axis1");
  spec.validate();
  return spec;
}

void parallel_for(int n, int threads, const std::function<void(int)>& work) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace creutz
