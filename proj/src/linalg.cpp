#include "creutz/linalg.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numeric>

namespace creutz {

namespace {

void check_input(const ComplexMatrix& H, const EigenOptions& opt) {
  if (H.rows() != H.cols()) throw std::invalid_argument("matrix must be square");
  if (H.rows() < 1) throw std::invalid_argument("matrix must be nonempty");
  if (H.rows() > opt.max_dim) throw std::invalid_argument("matrix exceeds configured max dimension");
  if (!H.allFinite()) throw std::invalid_argument("matrix entries must be finite");
}

std::vector<int> sort_order(const ComplexVector& values) {
  std::vector<int> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (values[a].real() != values[b].real()) return values[a].real() < values[b].real();
    return values[a].imag() < values[b].imag();
  });
  return order;
}

}  // namespace

EigenDecomposition eigen_general(const ComplexMatrix& H, const EigenOptions& opt) {
  check_input(H, opt);
  const int n = static_cast<int>(H.rows());

  Eigen::ComplexEigenSolver<ComplexMatrix> solver(H, /*computeEigenvectors=*/true);
  if (solver.info() != Eigen::Success) {
    Eigen::ComplexSchur<ComplexMatrix> schur(H, /*computeU=*/false);
    throw EigensolverError("QR iteration failed to converge", schur.matrixT());
  }

  const auto order = sort_order(solver.eigenvalues());

  EigenDecomposition d;
  d.values.resize(n);
  d.vectors.resize(n, n);
  d.residuals.resize(n);
  d.vector_ok.resize(n);
  d.norm_frobenius = H.norm();

  const double tol = opt.residual_factor * d.norm_frobenius;
  for (int i = 0; i < n; ++i) {
    const int j = order[i];
    d.values[i] = solver.eigenvalues()[j];
    ComplexVector v = solver.eigenvectors().col(j);
    const double norm = v.norm();
    if (norm > 0.0) v /= norm;
    d.vectors.col(i) = v;
    d.residuals[i] = norm > 0.0 ? (H * v - d.values[i] * v).norm() : std::numeric_limits<double>::infinity();
    d.vector_ok[i] = d.residuals[i] <= std::max(tol, 1e-300);
  }
  return d;
}

ComplexVector eigenvalues_general(const ComplexMatrix& H, const EigenOptions& opt) {
  check_input(H, opt);
  Eigen::ComplexSchur<ComplexMatrix> schur(H, /*computeU=*/false);
  if (schur.info() != Eigen::Success)
    throw EigensolverError("QR iteration failed to converge", schur.matrixT());
  ComplexVector values = schur.matrixT().diagonal();
  const auto order = sort_order(values);
  ComplexVector sorted(values.size());
  for (int i = 0; i < values.size(); ++i) sorted[i] = values[order[i]];
  return sorted;
}

ComplexVector inverse_iteration(const ComplexMatrix& H, Complex lambda,
                                const std::vector<ComplexVector>& orthogonal_to,
                                int iterations) {
  const int n = static_cast<int>(H.rows());
  // Small relative shift keeps the factorization nonsingular at an exact
  // eigenvalue; the solution still aligns with the eigenvector.
  const double scale = std::max(1.0, std::abs(lambda));
  const Complex shift = lambda + Complex(1e-12, 1e-12) * scale;
  Eigen::PartialPivLU<ComplexMatrix> lu(H - shift * ComplexMatrix::Identity(n, n));

  ComplexVector v = ComplexVector::Zero(n);
  for (int i = 0; i < n; ++i)
    v[i] = Complex(std::cos(0.7 * (i + 1) + 1.3 * orthogonal_to.size()),
                   std::sin(1.1 * (i + 1) - 0.4 * orthogonal_to.size()));
  for (const auto& u : orthogonal_to) v -= u.dot(v) * u;
  v.normalize();

  for (int it = 0; it < iterations; ++it) {
    v = lu.solve(v);
    for (const auto& u : orthogonal_to) v -= u.dot(v) * u;
    const double norm = v.norm();
    if (!(norm > 0.0) || !v.allFinite()) {
      v.setOnes();
      v.normalize();
      continue;
    }
    v /= norm;
  }
  return v;
}

std::pair<ComplexVector, ComplexVector> invariant_pair_basis(const ComplexMatrix& H,
                                                             Complex l1, Complex l2,
                                                             int iterations) {
  const int n = static_cast<int>(H.rows());
  const Complex center = 0.5 * (l1 + l2);
  const double scale = std::max(1.0, std::abs(center));
  const Complex shift = center + Complex(1e-10, 1e-10) * scale;
  Eigen::PartialPivLU<ComplexMatrix> lu(H - shift * ComplexMatrix::Identity(n, n));

  ComplexMatrix V(n, 2);
  for (int i = 0; i < n; ++i) {
    V(i, 0) = Complex(std::cos(0.7 * (i + 1)), std::sin(1.1 * (i + 1)));
    V(i, 1) = Complex(std::cos(1.9 * (i + 1) + 0.3), std::sin(0.5 * (i + 1) + 1.2));
  }
  for (int it = 0; it < iterations; ++it) {
    V = lu.solve(V);
    if (!V.allFinite()) break;
    const Eigen::HouseholderQR<ComplexMatrix> qr(V);
    V = qr.householderQ() * ComplexMatrix::Identity(n, 2);
  }
  return {V.col(0), V.col(1)};
}

std::pair<Complex, Complex> eig2(const BlochCoefficients& c) {
  const Complex s = std::sqrt(band_discriminant(c));
  return {c.h0 + s, c.h0 - s};
}

}  // namespace creutz
