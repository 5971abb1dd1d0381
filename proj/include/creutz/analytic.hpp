#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "creutz/model.hpp"

namespace creutz {

enum class TransferRegime { BothInside, BothOutside, Split };

// Eigenvalues of the zero-energy transfer matrix T_A of the alpha-deformed
// ladder, lambda_{1,2} = (-M +- sqrt(M^2 - 4 R+ R-)) / (2 R+),
// R+- = r +- dr/2, dr = (e^a+e^-a) sin t - i (e^-a-e^a) cos t.
// Ordered by modulus, descending. BothInside / BothOutside signal a
// normalizable zero mode at each end; Split means none.
struct TransferEigs {
  Complex lambda1;
  Complex lambda2;
  TransferRegime regime = TransferRegime::Split;
};

TransferEigs transfer_eigs(double M, double r, double theta, double alpha);

// Edge criterion of the alpha scenario: |M| < |2r|, strict.
bool alpha_edge_criterion(double M, double r);

// Extreme values of P(k) for the m/r1 scenario. The third extreme exists
// only when |cos k'| <= 1 and sin^2 t - r^2 + r1^2 != 0.
struct PExtremes {
  double p0 = 0.0;
  double ppi = 0.0;
  std::optional<double> pkprime;
  std::optional<double> coskprime;
};

PExtremes p_extremes(double M, double r, double theta, double m, double r1);

// One phase-boundary curve: critical m values as a function of r1.
struct BoundaryCurve {
  std::string name;  // p0_plus, p0_minus, ppi_plus, ppi_minus, pkprime,
                     // coskp_plus, coskp_minus
  std::function<std::vector<double>(double r1)> critical_m;
};

// All m(r1) boundary curves of the m/r1 scenario: P(0)=0, P(pi)=0, P(k')=0
// and the cos k' = +-1 existence edges. r1 = 0 singularities are excluded
// from curve domains (empty result there).
std::vector<BoundaryCurve> m_r1_boundaries(double M, double r, double theta);

// Critical theta values for fixed (M, r, m, r1): the band-overlap onset
// E-(0) = E+(pi) and the band-touching onset P(k') = 0, both by bisection on
// (0, pi/2). Absent when no root exists.
struct ThetaTransitions {
  std::optional<double> overlap_theta;
  std::optional<double> touching_theta;
};

ThetaTransitions m_r1_theta_transitions(double M, double r, double m, double r1);

// Degeneracy conditions of the r2 scenario: a normal degenerate point at
// M = +-2r, exceptional points at |r2| = |sin t| with |M| < |2r|.
struct R2Conditions {
  bool dp = false;
  bool ep = false;
};

R2Conditions r2_conditions(double M, double r, double theta, double r2, double tol = 1e-12);

// Topological criterion of the mu scenario (valid for r = sin t):
// sqrt|M^2 - mu^2| < |2 sin t|.
bool mu_criterion(double M, double mu, double theta);

}  // namespace creutz
