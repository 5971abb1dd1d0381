#include <CLI11.hpp>
#include <complex>
#include <iostream>
#include <string>

#include "creutz/cli.hpp"

namespace {

// "a+bi" / "a-bi" / "a" -> complex
std::complex<double> parse_complex(const std::string& s) {
  std::size_t pos = 0;
  const double re = std::stod(s, &pos);
  double im = 0.0;
  if (pos < s.size()) {
    std::string rest = s.substr(pos);
    if (!rest.empty() && rest.back() == 'i') {
      rest.pop_back();
      im = rest.empty() || rest == "+" ? 1.0 : rest == "-" ? -1.0 : std::stod(rest);
    } else {
      throw std::invalid_argument("bad complex literal '" + s + "'");
    }
  }
  return {re, im};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Non-Hermitian Creutz ladder: spectra, winding, skin-effect and "
               "phase-diagram diagnostics"};
  app.set_version_flag("--version", creutz::cli::kVersion);
  app.require_subcommand(1);

  creutz::cli::Options opt;
  int L_flag = -1;
  std::vector<std::string> eref_strings;

  app.add_option("--config", opt.config_path, "Config file (key = value, optional [sweep])");
  app.add_option("--out", opt.out_dir, "Output directory")->capture_default_str();
  app.add_option("--nk", opt.nk, "Momentum grid size")->capture_default_str();
  app.add_option("--L", L_flag, "Override the unit-cell count");
  app.add_option("--threads", opt.threads, "Worker threads for sweeps")->capture_default_str();
  app.add_option("--tol", opt.tol, "Edge detection: distance to the PBC spectrum")
      ->capture_default_str();
  app.add_option("--dipr-min", opt.dipr_min, "Edge detection: |dIPR| threshold")
      ->capture_default_str();

  auto* spectrum = app.add_subcommand("spectrum", "PBC bands, OBC spectrum and densities");
  auto* phase = app.add_subcommand("phase-diagram", "2-D sweep of gap class / edges / dIPR");
  auto* winding = app.add_subcommand("winding", "Spectral winding numbers");
  winding->add_option("--eref", eref_strings, "Reference energies like 1.5 or 0.5-0.25i");
  auto* bbc = app.add_subcommand("bbc", "PBC vs OBC gap-closing comparison along one axis");
  auto* transfer = app.add_subcommand("transfer-matrix", "Zero-mode transfer-matrix eigenvalues");
  auto* boundaries = app.add_subcommand("boundaries", "Closed-form phase boundary curves");
  boundaries->add_option("--family", opt.family, "m_r1 | r2 | mu | auto")->capture_default_str();

  CLI11_PARSE(app, argc, argv);

  if (L_flag > 0) opt.L = L_flag;
  try {
    for (const auto& s : eref_strings) opt.erefs.push_back(parse_complex(s));
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return creutz::cli::kConfigError;
  }

  if (spectrum->parsed()) return creutz::cli::cmd_spectrum(opt);
  if (phase->parsed()) return creutz::cli::cmd_phase_diagram(opt);
  if (winding->parsed()) return creutz::cli::cmd_winding(opt);
  if (bbc->parsed()) return creutz::cli::cmd_bbc(opt);
  if (transfer->parsed()) return creutz::cli::cmd_transfer_matrix(opt);
  if (boundaries->parsed()) return creutz::cli::cmd_boundaries(opt);
  return creutz::cli::kConfigError;
}
