#pragma once

#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace creutz {

enum class Boundary { PBC, OBC };

// Raised for malformed parameter/config documents.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Full parameter record of the non-Hermitian Creutz ladder.
//
// K is the energy unit and is fixed to 1. The non-Hermitian deformations are
//   alpha : imaginary phase, theta -> theta + i*alpha (leg amplitudes e^{-alpha}, e^{+alpha})
//   m     : rung asymmetry, M -> M +- m
//   r1    : balanced cross asymmetry, r -> r +- r1
//   r2    : unbalanced cross asymmetry, r -> r +- r2
//   mu    : imaginary on-site potentials, -i*mu on leg A and +i*mu on leg B
// and all of them compose in one Hamiltonian.
struct LadderParams {
  double K = 1.0;
  double r = 0.0;
  double M = 0.0;
  double theta = 0.0;  // radians
  double alpha = 0.0;
  double m = 0.0;
  double r1 = 0.0;
  double r2 = 0.0;
  double mu = 0.0;
  int L = 2;
  Boundary bc = Boundary::PBC;

  // Throws std::invalid_argument if K != 1, L < 2 or any value is not finite.
  void validate() const;

  LadderParams with_bc(Boundary b) const {
    LadderParams q = *this;
    q.bc = b;
    return q;
  }
};

// Numeric fields that a sweep may scan over.
bool is_sweepable_field(const std::string& name);
double get_field(const LadderParams& p, const std::string& name);
void set_field(LadderParams& p, const std::string& name, double value);

// Flat key-value document, keys exactly K, r, M, theta, alpha, m, r1, r2, mu,
// L, bc. Unknown keys are an error; missing keys keep their defaults.
LadderParams parse_params(std::istream& in);
LadderParams parse_params(const std::string& text);
std::string format_params(const LadderParams& p);

// A whole config file: the parameter block plus an optional [sweep] section.
// Sweep entries are kept as raw whitespace-split tokens per key.
struct ConfigFile {
  LadderParams params;
  bool has_sweep = false;
  std::map<std::string, std::vector<std::string>> sweep;
};

ConfigFile parse_config(std::istream& in);
ConfigFile parse_config_file(const std::string& path);

}  // namespace creutz
