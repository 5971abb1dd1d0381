#include "creutz/cli.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <json.hpp>
#include <numbers>

#include "creutz/analytic.hpp"
#include "creutz/csvio.hpp"
#include "creutz/localization.hpp"
#include "creutz/sweep.hpp"

namespace creutz::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Loaded {
  LadderParams params;
  std::optional<SweepSpec> sweep;
};

Loaded load(const Options& opt, bool need_sweep) {
  if (opt.config_path.empty()) throw ConfigError("--config is required");
  ConfigFile cfg = parse_config_file(opt.config_path);
  Loaded out;
  out.params = cfg.params;
  if (opt.L) out.params.L = *opt.L;
  try {
    out.params.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
  if (cfg.has_sweep) out.sweep = parse_sweep(cfg.sweep);
  if (need_sweep && !out.sweep) throw ConfigError("this command requires a [sweep] section");
  return out;
}

std::ofstream open_out(const Options& opt, const std::string& name) {
  fs::create_directories(opt.out_dir);
  const fs::path path = fs::path(opt.out_dir) / name;
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot open output file " + path.string());
  return f;
}

EdgeOptions edge_options(const Options& opt) {
  EdgeOptions eo;
  eo.gap_distance = opt.tol;
  eo.dipr_min = opt.dipr_min;
  eo.nk_ref = opt.nk;
  return eo;
}

int guard(const std::function<void()>& body) {
  try {
    body();
    return kOk;
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kConfigError;
  } catch (const EigensolverError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  } catch (const std::exception& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kNumericalError;
  }
}

// Boundary-curve rows (sweep_param, critical_value, curve_name) for the
// sweep family at hand; empty when no closed form applies.
std::vector<std::tuple<double, double, std::string>> boundary_rows(
    const LadderParams& p, const std::string& family, double from, double to, int count) {
  std::vector<std::tuple<double, double, std::string>> rows;
  if (family == "m_r1") {
    const auto curves = m_r1_boundaries(p.M, p.r, p.theta);
    for (int i = 0; i < count; ++i) {
      const double r1 = from + (to - from) * i / (count - 1);
      if (std::abs(r1) < 1e-12) continue;
      for (const auto& c : curves)
        for (double m : c.critical_m(r1)) rows.emplace_back(r1, m, c.name);
    }
  } else if (family == "mu") {
    // sqrt|M^2 - mu^2| = |2 sin theta| as mu(M), both branches
    const double g = std::abs(2.0 * std::sin(p.theta));
    for (int i = 0; i < count; ++i) {
      const double M = from + (to - from) * i / (count - 1);
      rows.emplace_back(M, std::sqrt(M * M + g * g), "mu_upper");
      if (M * M >= g * g) rows.emplace_back(M, std::sqrt(M * M - g * g), "mu_lower");
    }
  } else if (family == "r2") {
    for (int i = 0; i < count; ++i) {
      const double M = from + (to - from) * i / (count - 1);
      rows.emplace_back(M, std::abs(std::sin(p.theta)), "r2_ep");
    }
    rows.emplace_back(2.0 * p.r, 0.0, "r2_dp");
    rows.emplace_back(-2.0 * p.r, 0.0, "r2_dp");
  }
  return rows;
}

std::string pick_family(const Options& opt, const LadderParams& p, const SweepSpec* sweep) {
  if (opt.family != "auto") return opt.family;
  if (sweep) {
    const std::string a = sweep->axis1.name;
    const std::string b = sweep->two_axes() ? sweep->axis2.name : "";
    if ((a == "r1" && b == "m") || (a == "m" && b == "r1")) return "m_r1";
    if ((a == "M" && b == "mu") || (a == "mu" && b == "M")) return "mu";
    if (b == "r2" || a == "r2") return "r2";
  }
  if (p.mu != 0.0) return "mu";
  if (p.r2 != 0.0) return "r2";
  return "m_r1";
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_spectrum(const Options& opt) {
  return guard([&] {
    const Loaded in = load(opt, false);
    const LadderParams p = in.params;

    {
      const BandStructure bs = bands(p.with_bc(Boundary::PBC), opt.nk);
      auto f = open_out(opt, "pbc_bands.csv");
      f << "k,ReEplus,ImEplus,ReEminus,ImEminus\n";
      for (int j = 0; j < bs.kgrid.size(); ++j)
        f << g12(bs.kgrid[j]) << "," << g12(bs.Eplus[j]) << "," << g12(bs.Eminus[j]) << "\n";
    }

    const SpectrumOBC s = solve_obc(p.with_bc(Boundary::OBC), edge_options(opt));
    {
      auto f = open_out(opt, "obc_spectrum.csv");
      f << "index,ReE,ImE,dipr,is_edge\n";
      for (int i = 0; i < s.values.size(); ++i)
        f << i << "," << g12(s.values[i]) << "," << g12(s.dipr[i]) << ","
          << (s.is_edge[i] ? "true" : "false") << "\n";
    }
    {
      const auto [rp, rm] = density_profile(s);
      auto f = open_out(opt, "profile.csv");
      f << "x,rho_plus,rho_minus\n";
      for (int x = 0; x < rp.size(); ++x)
        f << (x + 1) << "," << g12(rp[x]) << "," << g12(rm[x]) << "\n";
    }
  });
}

// ---------------------------------------------------------------------------

int cmd_phase_diagram(const Options& opt) {
  return guard([&] {
    const auto t0 = std::chrono::steady_clock::now();
    const Loaded in = load(opt, true);
    const SweepSpec& sweep = *in.sweep;
    if (!sweep.two_axes()) throw ConfigError("phase-diagram requires axis1 and axis2");

    const int n1 = sweep.axis1.count, n2 = sweep.axis2.count;
    const int ncells = n1 * n2;
    const bool want_gap = sweep.outputs.empty() || sweep.outputs.count("gapclass");
    const bool want_edge = sweep.outputs.empty() || sweep.outputs.count("edge");
    const bool want_dipr = sweep.outputs.count("dipr");

    struct Cell {
      GapClass gap = GapClass::Boundary;
      int edge_count = 0;
      double ibp = 0.0, ibm = 0.0;
      std::string status = "ok";
    };
    std::vector<Cell> cells(ncells);
    const EdgeOptions eo = edge_options(opt);

    parallel_for(ncells, opt.threads, [&](int idx) {
      const int i = idx / n2, j = idx % n2;
      LadderParams q = in.params;
      set_field(q, sweep.axis1.name, sweep.axis1.value(i));
      set_field(q, sweep.axis2.name, sweep.axis2.value(j));
      Cell& cell = cells[idx];
      try {
        if (want_gap) {
          cell.gap = classify_gap(q.with_bc(Boundary::PBC), std::max(256, opt.nk / 4));
          if (cell.gap == GapClass::Boundary) cell.status = "boundary";
        }
        if (want_dipr) {
          const SpectrumOBC s = solve_obc(q.with_bc(Boundary::OBC), eo);
          const DiprReport rep = band_dipr(s);
          cell.ibp = rep.Ibar_plus;
          cell.ibm = rep.Ibar_minus;
          int tagged = 0;
          for (bool e : s.is_edge) tagged += e;
          cell.edge_count = tagged;
        } else if (want_edge) {
          cell.edge_count = 2 * edge_pair_count(q.with_bc(Boundary::OBC), eo);
        }
      } catch (const std::exception& e) {
        cell.status = std::string("error:") + e.what();
      }
    });

    {
      auto f = open_out(opt, "phase.csv");
      f << "p1,p2,gap_label,edge_count,Ibar_plus,Ibar_minus\n";
      for (int i = 0; i < n1; ++i)
        for (int j = 0; j < n2; ++j) {
          const Cell& cell = cells[i * n2 + j];
          f << g12(sweep.axis1.value(i)) << "," << g12(sweep.axis2.value(j)) << ","
            << (want_gap ? to_string(cell.gap) : "") << ","
            << (want_edge || want_dipr ? std::to_string(cell.edge_count) : "") << ","
            << (want_dipr ? g12(cell.ibp) : "") << "," << (want_dipr ? g12(cell.ibm) : "")
            << "\n";
        }
    }

    const std::string family = pick_family(opt, in.params, &sweep);
    const auto rows =
        boundary_rows(in.params, family, sweep.axis1.min, sweep.axis1.max, sweep.axis1.count);
    if (!rows.empty()) {
      auto f = open_out(opt, "boundaries.csv");
      f << "sweep_param,critical_value,curve_name\n";
      for (const auto& [x, y, name] : rows) f << g12(x) << "," << g12(y) << "," << name << "\n";
    }

    int failures = 0;
    json manifest;
    manifest["version"] = kVersion;
    manifest["config"] = format_params(in.params);
    manifest["nk"] = opt.nk;
    manifest["L"] = in.params.L;
    manifest["axis1"] = {{"name", sweep.axis1.name}, {"min", sweep.axis1.min},
                         {"max", sweep.axis1.max},   {"count", sweep.axis1.count}};
    manifest["axis2"] = {{"name", sweep.axis2.name}, {"min", sweep.axis2.min},
                         {"max", sweep.axis2.max},   {"count", sweep.axis2.count}};
    json cell_status = json::array();
    for (int idx = 0; idx < ncells; ++idx) {
      cell_status.push_back(cells[idx].status);
      if (cells[idx].status.rfind("error:", 0) == 0) ++failures;
    }
    manifest["cells"] = std::move(cell_status);
    const auto t1 = std::chrono::steady_clock::now();
    manifest["wall_time_s"] = std::chrono::duration<double>(t1 - t0).count();
    auto f = open_out(opt, "manifest.json");
    f << manifest.dump(2) << "\n";

    if (failures == ncells) throw std::runtime_error("all sweep cells failed");
  });
}

// ---------------------------------------------------------------------------

int cmd_winding(const Options& opt) {
  return guard([&] {
    const Loaded in = load(opt, false);
    const LadderParams p = in.params.with_bc(Boundary::PBC);

    std::vector<Complex> refs = opt.erefs;
    if (refs.empty()) {
      // auto grid spanning the spectrum hull bounding box
      double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
      for (int j = 0; j < opt.nk; ++j) {
        const auto [ep, em] = eig2(bloch(p, 2.0 * std::numbers::pi * j / opt.nk));
        for (const Complex e : {ep, em}) {
          xmin = std::min(xmin, e.real());
          xmax = std::max(xmax, e.real());
          ymin = std::min(ymin, e.imag());
          ymax = std::max(ymax, e.imag());
        }
      }
      const int grid = 12;
      const double dx = xmax - xmin, dy = ymax - ymin;
      for (int i = 1; i < grid; ++i)
        for (int j = 1; j < grid; ++j)
          refs.emplace_back(xmin + dx * i / grid, ymin + (dy > 0 ? dy * j / grid : 0.0));
      if (dy <= 0.0) refs.resize(grid - 1);
    }

    auto f = open_out(opt, "winding.csv");
    f << "ReEref,ImEref,w,raw\n";
    for (const Complex eref : refs) {
      try {
        const WindingResult w = winding_number(p, eref, opt.nk);
        f << g12(eref) << "," << w.w << "," << g12(w.raw) << "\n";
      } catch (const WindingResolutionError&) {
        f << g12(eref) << ",,\n";
      }
    }
  });
}

// ---------------------------------------------------------------------------

int cmd_bbc(const Options& opt) {
  return guard([&] {
    const Loaded in = load(opt, true);
    const SweepSpec& sweep = *in.sweep;
    if (sweep.two_axes()) throw ConfigError("bbc requires a single-axis sweep");

    const BbcReport report =
        bbc_check(in.params, sweep.axis1.name, sweep.axis1.min, sweep.axis1.max,
                  sweep.axis1.count, opt.nk, edge_options(opt), opt.threads);

    json out;
    out["axis"] = sweep.axis1.name;
    out["pbc_closing"] = report.pbc_closing;
    out["obc_closing"] = report.obc_closing;
    out["conventional_bbc"] = report.conventional_bbc;
    auto f = open_out(opt, "bbc.json");
    f << out.dump(2) << "\n";
  });
}

// ---------------------------------------------------------------------------

int cmd_transfer_matrix(const Options& opt) {
  return guard([&] {
    const Loaded in = load(opt, false);
    const LadderParams p = in.params;

    SweepAxis axis{"M", -3.0, 3.0, 241};
    if (in.sweep) axis = in.sweep->axis1;

    auto f = open_out(opt, "transfer.csv");
    f << axis.name << ",Relambda1,Imlambda1,abs1,Relambda2,Imlambda2,abs2,regime\n";
    for (int i = 0; i < axis.count; ++i) {
      LadderParams q = p;
      const double t = axis.value(i);
      set_field(q, axis.name, t);
      const TransferEigs te = transfer_eigs(q.M, q.r, q.theta, q.alpha);
      const char* regime = te.regime == TransferRegime::BothInside    ? "both_inside"
                           : te.regime == TransferRegime::BothOutside ? "both_outside"
                                                                      : "split";
      f << g12(t) << "," << g12(te.lambda1) << "," << g12(std::abs(te.lambda1)) << ","
        << g12(te.lambda2) << "," << g12(std::abs(te.lambda2)) << "," << regime << "\n";
    }
  });
}

// ---------------------------------------------------------------------------

int cmd_boundaries(const Options& opt) {
  return guard([&] {
    const Loaded in = load(opt, false);
    SweepAxis axis{"r1", 0.0, 2.0, 201};
    if (in.sweep) axis = in.sweep->axis1;
    const std::string family =
        pick_family(opt, in.params, in.sweep ? &*in.sweep : nullptr);
    const auto rows = boundary_rows(in.params, family, axis.min, axis.max, axis.count);
    if (rows.empty()) throw ConfigError("no closed-form boundary family for this configuration");
    auto f = open_out(opt, "boundaries.csv");
    f << "sweep_param,critical_value,curve_name\n";
    for (const auto& [x, y, name] : rows) f << g12(x) << "," << g12(y) << "," << name << "\n";
  });
}

}  // namespace creutz::cli
