#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "creutz/model.hpp"

namespace creutz {

// QR iteration did not converge. Carries whatever partially reduced state the
// solver produced.
struct EigensolverError : std::runtime_error {
  explicit EigensolverError(const std::string& what, ComplexMatrix partial = {})
      : std::runtime_error(what), partial_schur(std::move(partial)) {}
  ComplexMatrix partial_schur;
};

struct EigenOptions {
  int max_dim = 4096;
  double residual_factor = 1e-10;  // accepted residual: factor * ||H||_F
};

// Right eigenpairs of a dense complex matrix.
struct EigenDecomposition {
  ComplexVector values;          // ascending by Re, ties by Im
  ComplexMatrix vectors;         // columns, unit 2-norm, aligned with values
  RealVector residuals;          // ||H v - lambda v||_2 per pair
  std::vector<bool> vector_ok;   // residual within tolerance; defective
                                 // directions are flagged, never fabricated
  double norm_frobenius = 0.0;
};

// Dense non-Hermitian eigensolver: Hessenberg reduction, shifted QR with
// deflation, eigenvectors by Schur back-substitution.
EigenDecomposition eigen_general(const ComplexMatrix& H, const EigenOptions& opt = {});

// Eigenvalues only; same ordering. Cheaper when vectors are not needed.
ComplexVector eigenvalues_general(const ComplexMatrix& H, const EigenOptions& opt = {});

// One right eigenvector for a known eigenvalue by shifted inverse iteration.
// `orthogonal_to` restricts the iteration away from already-found directions
// (used for numerically degenerate pairs).
ComplexVector inverse_iteration(const ComplexMatrix& H, Complex lambda,
                                const std::vector<ComplexVector>& orthogonal_to = {},
                                int iterations = 4);

// Orthonormal basis of the two-dimensional invariant subspace belonging to a
// (nearly) degenerate eigenvalue pair, by blocked shifted inverse iteration.
// Robust where per-eigenvalue inverse iteration degrades.
std::pair<ComplexVector, ComplexVector> invariant_pair_basis(const ComplexMatrix& H,
                                                             Complex l1, Complex l2,
                                                             int iterations = 5);

// Closed-form 2x2 bands E+- = h0 +- sqrt(hx^2+hy^2+hz^2), principal root.
// E+ carries the larger real part; ties break toward larger imaginary part.
std::pair<Complex, Complex> eig2(const BlochCoefficients& c);

}  // namespace creutz
