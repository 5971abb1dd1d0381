#pragma once

#include <utility>
#include <vector>

#include "creutz/spectral.hpp"

namespace creutz {

// Amplitudes of one normalized eigenmode over the ladder, x = 1..L.
struct ModeProfile {
  ComplexVector a;  // leg A
  ComplexVector b;  // leg B
};

// Split an interleaved (A,B)-per-cell eigenvector into a profile.
ModeProfile mode_profile(const ComplexVector& v);

// Directed inverse participation ratio,
//   I_d = sum_x (x - x_c)(|psi_A|^4 + |psi_B|^4) / [(L-1)/2],  x_c = (L+1)/2.
// Positive toward x = L, negative toward x = 1, zero for extended modes.
// Requires a normalized mode and L >= 3.
double dipr(const ModeProfile& mode);

struct DiprReport {
  std::vector<double> per_mode;  // aligned with spectrum indices
  double Ibar_plus = 0.0;
  double Ibar_minus = 0.0;
  double product = 0.0;
};

// Band-averaged dIPR over bulk modes, Ibar_{+-} = sum_{n in +-} I_n / N with
// N = L-1 when a degenerate edge pair is present and N = L otherwise.
DiprReport band_dipr(const SpectrumOBC& spectrum);

// Summed population rho_{+-}(x) over the bulk modes of each band.
std::pair<RealVector, RealVector> density_profile(const SpectrumOBC& spectrum);

// Closed-form inverse localization length of the uniform skin effect,
// kappa_u = ln sqrt|(M+mu)/(M-mu)|. Diverges at |M| = |mu|.
double kappa_u(double M, double mu);

// Exponential decay rate of a mode envelope: magnitude of the least-squares
// slope of ln(|psi_A|^2+|psi_B|^2)/2 over the interior window [L/4, 3L/4].
// Reported as a positive rate for either localization direction; the sign of
// dipr() carries the direction. Extended modes fit to ~0. Requires L >= 16.
double fit_kappa(const ModeProfile& mode);

}  // namespace creutz
