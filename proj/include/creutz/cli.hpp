#pragma once

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "creutz/params.hpp"
#include "creutz/spectral.hpp"

namespace creutz::cli {

inline constexpr const char* kVersion = "0.1.0";

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kNumericalError = 3;

struct Options {
  std::string config_path;
  std::string out_dir = ".";
  int nk = 1024;
  std::optional<int> L;       // overrides the config value
  int threads = 2;
  double tol = 0.05;          // edge detection: distance to the PBC spectrum
  double dipr_min = 0.5;      // edge detection: |dIPR| threshold
  std::vector<Complex> erefs; // winding: explicit reference energies
  std::string family = "auto";  // boundaries: m_r1 | r2 | mu | auto
};

// Each command reads the config, writes its artifacts into out_dir and
// returns an exit code; error text goes to stderr.
int cmd_spectrum(const Options& opt);
int cmd_phase_diagram(const Options& opt);
int cmd_winding(const Options& opt);
int cmd_bbc(const Options& opt);
int cmd_transfer_matrix(const Options& opt);
int cmd_boundaries(const Options& opt);

}  // namespace creutz::cli
