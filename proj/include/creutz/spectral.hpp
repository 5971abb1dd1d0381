#pragma once

#include <optional>
#include <string>
#include <vector>

#include "creutz/linalg.hpp"
#include "creutz/model.hpp"
#include "creutz/params.hpp"

namespace creutz {

// ---------------------------------------------------------------------------
// Band structures

struct BandStructure {
  RealVector kgrid;      // Nk momenta, uniform on [0, 2pi)
  ComplexVector Eplus;   // k-continuous labeling
  ComplexVector Eminus;
  LadderParams params;
};

// eig2 on a uniform grid, relabeled for continuity (the label permutation at
// each step minimizes the total jump). Requires nk >= 64.
BandStructure bands(const LadderParams& p, int nk);

// ---------------------------------------------------------------------------
// Spectral winding

struct WindingResult {
  Complex Eref;
  int w = 0;
  int nk = 0;
  double raw = 0.0;  // accumulated phase / 2pi before rounding
};

// The reference energy sits too close to the spectrum, or the accumulated
// phase did not resolve to an integer; retry with a larger grid.
struct WindingResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// w(Eref) = (1/2pi) sum_j wrapped arg increments of det(h(k_j) - Eref).
// Fails if |raw - nearest integer| >= 0.05 or Eref is within 1e-6 of the
// sampled spectrum.
WindingResult winding_number(const LadderParams& p, Complex Eref, int nk);

// ---------------------------------------------------------------------------
// Gap classification

enum class GapClass {
  RealLineGap,
  ImaginaryLineGap,
  GaplessBandTouching,
  GaplessOverlap,
  PointGapOnly,
  Boundary,  // inconclusive within margin 1e-6; reported, never guessed
};

enum class Topology { Trivial, EdgeModes, NotApplicable };

struct PhaseLabel {
  GapClass gap = GapClass::Boundary;
  Topology topological = Topology::NotApplicable;
};

std::string to_string(GapClass g);

// Numerical classifier on P(k) = hx^2+hy^2+hz^2 over an nk-grid (nk >= 256).
// Real-valued P: sign of P plus the real-axis band overlap decide between
// RealLineGap / ImaginaryLineGap / GaplessBandTouching / GaplessOverlap.
// Genuinely complex P: a separating vertical line gives RealLineGap, a
// pointwise degeneracy GaplessBandTouching, joined loops PointGapOnly.
GapClass classify_gap(const LadderParams& p, int nk);

// ---------------------------------------------------------------------------
// Degeneracies

enum class DegeneracyKind { DP, EP };

struct DegeneracyPoint {
  double k = 0.0;
  DegeneracyKind kind = DegeneracyKind::DP;
};

// Roots of P(k) = 0 located by sign-change bracketing and |P| minimization
// (nk >= 512). DP when the full Hamiltonian vector (hx,hy,hz) vanishes at the
// root, EP otherwise.
std::vector<DegeneracyPoint> find_degeneracies(const LadderParams& p, int nk);

// ---------------------------------------------------------------------------
// Open-boundary spectra and edge modes

struct EdgeOptions {
  double gap_distance = 0.05;  // min distance to the sampled PBC spectrum
  // |dIPR| threshold for localization. The dIPR of an exponentially
  // localized mode is capped by its inverse participation ratio, which sits
  // near 0.35-0.6 for the edge modes of the reference systems (L = 30..200)
  // while extended and weakly directed bulk modes stay below ~0.2.
  double dipr_min = 0.25;
  // Pair-degeneracy tolerance relative to max |E|. The exact finite-size
  // splitting of an edge pair reaches ~1e-5 at L = 30 (slowest transfer root
  // (2/3)^L for the Hermitian reference point), so 1e-4 separates pairs from
  // bulk spacings without dropping genuine pairs.
  double deg_rel = 1e-4;
  int nk_ref = 1024;           // PBC sampling for the distance test
};

struct SpectrumOBC {
  LadderParams params;
  ComplexVector values;
  ComplexMatrix vectors;        // unit-norm right eigenvectors (columns)
  std::vector<double> dipr;     // per-mode directed IPR
  std::vector<bool> is_edge;    // member of a degenerate in-gap pair
  std::vector<int> band;        // +1 / -1 for bulk modes, 0 for edge modes
};

// Full OBC diagnosis: diagonalize real_space, tag edge modes, split the bulk
// into the two bands by Re(E - median); degenerate midpoints go to "+".
SpectrumOBC solve_obc(const LadderParams& p, const EdgeOptions& opt = {});

struct EdgeMode {
  int index = 0;
  Complex E;
  std::optional<int> partner;
};

// Edge-mode candidates of the OBC spectrum: distance to the sampled PBC
// spectrum above gap_distance and |dIPR| above dipr_min. Candidates are
// paired by energy degeneracy; unpaired candidates keep partner empty.
std::vector<EdgeMode> find_edge_modes(const LadderParams& p, const EdgeOptions& opt = {});

// Number of degenerate edge pairs, via an eigenvalue-first path that only
// computes eigenvectors for paired candidates. Agrees with find_edge_modes.
int edge_pair_count(const LadderParams& p, const EdgeOptions& opt = {});

// Gap class plus edge-mode content of one parameter point. EdgeModes is only
// reported with a real line-gap or a point-gap spectrum.
PhaseLabel phase_label(const LadderParams& p, int nk, const EdgeOptions& opt = {});

// ---------------------------------------------------------------------------
// Skin-effect predicate and bulk-boundary comparison

// True iff some reference energy on a coarse grid inside the convex hull of
// the PBC spectrum carries a nonzero spectral winding.
bool nhse_predicate(const LadderParams& p, int nk);

struct BbcReport {
  std::vector<double> pbc_closing;
  std::vector<double> obc_closing;
  bool conventional_bbc = false;
};

// Sweep one parameter (>= 50 points): PBC closings are refined zeros of the
// minimal band distance, OBC closings are the points where the degenerate
// edge pair appears or disappears. Conventional BBC holds iff the two sets
// agree within one sweep step.
BbcReport bbc_check(const LadderParams& base, const std::string& axis, double from,
                    double to, int npoints, int nk, const EdgeOptions& opt = {},
                    int threads = 1);

}  // namespace creutz
