#include "creutz/params.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace creutz {

namespace {

bool finite(double v) { return std::isfinite(v); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(value, &pos);
    if (pos != value.size()) throw ConfigError("trailing characters");
    return v;
  } catch (const std::exception&) {
    throw ConfigError("invalid number for key '" + key + "': '" + value + "'");
  }
}

int parse_int(const std::string& key, const std::string& value) {
  try {
    std::size_t pos = 0;
    const long v = std::stol(value, &pos);
    if (pos != value.size()) throw ConfigError("trailing characters");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ConfigError("invalid integer for key '" + key + "': '" + value + "'");
  }
}

void assign(LadderParams& p, const std::string& key, const std::string& value) {
  if (key == "K")
    p.K = parse_real(key, value);
  else if (key == "r")
    p.r = parse_real(key, value);
  else if (key == "M")
    p.M = parse_real(key, value);
  else if (key == "theta")
    p.theta = parse_real(key, value);
  else if (key == "alpha")
    p.alpha = parse_real(key, value);
  else if (key == "m")
    p.m = parse_real(key, value);
  else if (key == "r1")
    p.r1 = parse_real(key, value);
  else if (key == "r2")
    p.r2 = parse_real(key, value);
  else if (key == "mu")
    p.mu = parse_real(key, value);
  else if (key == "L")
    p.L = parse_int(key, value);
  else if (key == "bc") {
    if (value == "PBC")
      p.bc = Boundary::PBC;
    else if (value == "OBC")
      p.bc = Boundary::OBC;
    else
      throw ConfigError("bc must be PBC or OBC, got '" + value + "'");
  } else {
    throw ConfigError("unknown key '" + key + "'");
  }
}

std::string g12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

}  // namespace

void LadderParams::validate() const {
  if (K != 1.0) throw std::invalid_argument("K is the energy unit and must be 1");
  for (double v : {r, M, theta, alpha, m, r1, r2, mu})
    if (!finite(v)) throw std::invalid_argument("parameters must be finite");
  if (L < 2) throw std::invalid_argument("L >= 2 required");
}

bool is_sweepable_field(const std::string& name) {
  static const char* fields[] = {"r", "M", "theta", "alpha", "m", "r1", "r2", "mu"};
  for (const char* f : fields)
    if (name == f) return true;
  return false;
}

double get_field(const LadderParams& p, const std::string& name) {
  if (name == "r") return p.r;
  if (name == "M") return p.M;
  if (name == "theta") return p.theta;
  if (name == "alpha") return p.alpha;
  if (name == "m") return p.m;
  if (name == "r1") return p.r1;
  if (name == "r2") return p.r2;
  if (name == "mu") return p.mu;
  throw std::invalid_argument("no numeric field '" + name + "'");
}

void set_field(LadderParams& p, const std::string& name, double value) {
  if (name == "r")
    p.r = value;
  else if (name == "M")
    p.M = value;
  else if (name == "theta")
    p.theta = value;
  else if (name == "alpha")
    p.alpha = value;
  else if (name == "m")
    p.m = value;
  else if (name == "r1")
    p.r1 = value;
  else if (name == "r2")
    p.r2 = value;
  else if (name == "mu")
    p.mu = value;
  else
    throw std::invalid_argument("no numeric field '" + name + "'");
}

ConfigFile parse_config(std::istream& in) {
  ConfigFile cfg;
  std::string line;
  bool in_sweep = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line == "[sweep]") {
        in_sweep = true;
        cfg.has_sweep = true;
        continue;
      }
      throw ConfigError("unknown section '" + line + "' at line " + std::to_string(lineno));
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'key = value' at line " + std::to_string(lineno));
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) throw ConfigError("empty key at line " + std::to_string(lineno));
    if (in_sweep) {
      std::istringstream tok(value);
      std::vector<std::string> parts;
      std::string t;
      while (tok >> t) parts.push_back(t);
      cfg.sweep[key] = parts;
    } else {
      assign(cfg.params, key, value);
    }
  }
  return cfg;
}

ConfigFile parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  return parse_config(in);
}

LadderParams parse_params(std::istream& in) {
  ConfigFile cfg = parse_config(in);
  if (cfg.has_sweep) throw ConfigError("unexpected [sweep] section in parameter document");
  return cfg.params;
}

LadderParams parse_params(const std::string& text) {
  std::istringstream in(text);
  return parse_params(in);
}

std::string format_params(const LadderParams& p) {
  std::ostringstream out;
  out << "K = " << g12(p.K) << "\n"
      << "r = " << g12(p.r) << "\n"
      << "M = " << g12(p.M) << "\n"
      << "theta = " << g12(p.theta) << "\n"
      << "alpha = " << g12(p.alpha) << "\n"
      << "m = " << g12(p.m) << "\n"
      << "r1 = " << g12(p.r1) << "\n"
      << "r2 = " << g12(p.r2) << "\n"
      << "mu = " << g12(p.mu) << "\n"
      << "L = " << p.L << "\n"
      << "bc = " << (p.bc == Boundary::PBC ? "PBC" : "OBC") << "\n";
  return out.str();
}

}  // namespace creutz
