#include "creutz/model.hpp"

#include <cmath>

namespace creutz {

namespace {
constexpr Complex kI{0.0, 1.0};
}

BlochCoefficients bloch(const LadderParams& p, double k) {
  p.validate();
  const double ck = std::cos(k), sk = std::sin(k);
  const double ct = std::cos(p.theta), st = std::sin(p.theta);
  const double ep = std::exp(p.alpha), em = std::exp(-p.alpha);
  const double cplus = ep + em;   // e^a + e^-a
  const double cminus = em - ep;  // e^-a - e^a
  BlochCoefficients c;
  c.h0 = p.K * ck * (Complex(cplus * ct, 0.0) + kI * (cminus * st));
  c.hz = -p.K * sk * (Complex(cplus * st, 0.0) - kI * (cminus * ct)) - kI * p.mu;
  c.hx = Complex(p.M + 2.0 * p.K * p.r * ck, 2.0 * p.K * p.r2 * sk);
  c.hy = kI * (p.m + 2.0 * p.K * p.r1 * ck);
  return c;
}

Eigen::Matrix2cd h2x2(const BlochCoefficients& c) {
  Eigen::Matrix2cd h;
  h << c.h0 + c.hz, c.hx - kI * c.hy,  //
      c.hx + kI * c.hy, c.h0 - c.hz;
  return h;
}

Complex band_discriminant(const BlochCoefficients& c) {
  return c.hx * c.hx + c.hy * c.hy + c.hz * c.hz;
}

ComplexMatrix real_space(const LadderParams& p) {
  p.validate();
  const int L = p.L;
  const int n = 2 * L;
  ComplexMatrix H = ComplexMatrix::Zero(n, n);

  const Complex fwdA = p.K * std::exp(Complex(-p.alpha, p.theta));  // e^{-a+it}
  const Complex bwdA = p.K * std::exp(Complex(p.alpha, -p.theta));  // e^{+a-it}
  const Complex fwdB = bwdA;
  const Complex bwdB = fwdA;

  const auto A = [](int x) { return 2 * x; };
  const auto B = [](int x) { return 2 * x + 1; };

  for (int x = 0; x < L; ++x) {
    H(A(x), A(x)) = -kI * p.mu;
    H(B(x), B(x)) = kI * p.mu;
    H(A(x), B(x)) = p.M + p.m;
    H(B(x), A(x)) = p.M - p.m;
  }

  const int bonds = (p.bc == Boundary::PBC) ? L : L - 1;
  for (int x = 0; x < bonds; ++x) {
    const int xn = (x + 1) % L;
    H(A(x), A(xn)) += fwdA;
    H(A(xn), A(x)) += bwdA;
    H(B(x), B(xn)) += fwdB;
    H(B(xn), B(x)) += bwdB;
    H(A(x), B(xn)) += p.K * (p.r + p.r1 + p.r2);
    H(A(xn), B(x)) += p.K * (p.r + p.r1 - p.r2);
    H(B(x), A(xn)) += p.K * (p.r - p.r1 + p.r2);
    H(B(xn), A(x)) += p.K * (p.r - p.r1 - p.r2);
  }
  return H;
}

}  // namespace creutz
