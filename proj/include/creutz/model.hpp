#pragma once

#include <Eigen/Dense>
#include <complex>

#include "creutz/params.hpp"

namespace creutz {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Coefficients of h(k) = h0*I + hx*sx + hy*sy + hz*sz at one momentum.
struct BlochCoefficients {
  Complex h0;
  Complex hx;
  Complex hy;
  Complex hz;
};

// Composed Bloch coefficients for all five deformations:
//   h0 = [(e^a+e^-a) cos t + i (e^-a-e^a) sin t] cos k
//   hz = -[(e^a+e^-a) sin t - i (e^-a-e^a) cos t] sin k - i mu
//   hx = M + 2 r cos k + 2 i r2 sin k
//   hy = i (m + 2 r1 cos k)
// With a single deformation active these reduce to the standard single-case
// forms; with none active, to the Hermitian ladder.
BlochCoefficients bloch(const LadderParams& p, double k);

// h0*I + hx*sx + hy*sy + hz*sz as a dense 2x2 matrix.
Eigen::Matrix2cd h2x2(const BlochCoefficients& c);

// P(k) = hx^2 + hy^2 + hz^2; the squared band splitting, (E+ - E-)^2 / 4.
Complex band_discriminant(const BlochCoefficients& c);

// Real-space Hamiltonian, 2L x 2L, basis (x,A),(x,B) for x = 1..L.
//
// Fourier convention: psi_x ~ e^{ikx}, so a hop t c+_x d_{x+1} contributes
// t e^{ik} to the Bloch element. That fixes the asymmetry assignments:
//   onsite  A: -i mu, B: +i mu
//   rung    A<-B within cell: M+m, B<-A: M-m
//   legs    A_{x}<-A_{x+1}: e^{-a+i t},  A_{x+1}<-A_{x}: e^{+a-i t}
//           B_{x}<-B_{x+1}: e^{+a-i t},  B_{x+1}<-B_{x}: e^{-a+i t}
//   cross   A_x<-B_{x+1}: r+r1+r2   A_{x+1}<-B_x: r+r1-r2
//           B_x<-A_{x+1}: r-r1+r2   B_{x+1}<-A_x: r-r1-r2
// (H(row,col) is the amplitude for col -> row.) Under PBC the x=L -> 1 wrap
// bonds are included, under OBC omitted.
ComplexMatrix real_space(const LadderParams& p);

}  // namespace creutz
