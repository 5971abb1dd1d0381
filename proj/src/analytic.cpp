#include "creutz/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace creutz {

namespace {
constexpr Complex kI{0.0, 1.0};

Complex delta_r(double theta, double alpha) {
  const double ep = std::exp(alpha), em = std::exp(-alpha);
  return Complex((ep + em) * std::sin(theta), 0.0) - kI * ((em - ep) * std::cos(theta));
}

double bisect(const std::function<double(double)>& f, double a, double b, double fa) {
  // fa and f(b) must have opposite signs
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if (std::abs(fm) < 1e-10 || 0.5 * (b - a) < 1e-14) return mid;
    if ((fm > 0.0) == (fa > 0.0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace

TransferEigs transfer_eigs(double M, double r, double theta, double alpha) {
  const Complex dr = delta_r(theta, alpha);
  const Complex Rp = r + 0.5 * dr;
  const Complex Rm = r - 0.5 * dr;
  if (std::abs(Rp) < 1e-300) throw std::invalid_argument("transfer_eigs: R+ = 0, singular transfer matrix");

  const Complex disc = Complex(M * M, 0.0) - 4.0 * Rp * Rm;
  const Complex s = std::sqrt(disc);
  Complex l1 = (-M + s) / (2.0 * Rp);
  Complex l2 = (-M - s) / (2.0 * Rp);
  if (std::abs(l2) > std::abs(l1)) std::swap(l1, l2);

  TransferEigs out;
  out.lambda1 = l1;
  out.lambda2 = l2;
  const double a1 = std::abs(l1), a2 = std::abs(l2);
  if (a1 < 1.0 && a2 < 1.0)
    out.regime = TransferRegime::BothInside;
  else if (a1 > 1.0 && a2 > 1.0)
    out.regime = TransferRegime::BothOutside;
  else
    out.regime = TransferRegime::Split;
  return out;
}

bool alpha_edge_criterion(double M, double r) { return std::abs(M) < std::abs(2.0 * r); }

PExtremes p_extremes(double M, double r, double theta, double m, double r1) {
  PExtremes out;
  const double st2 = std::sin(theta) * std::sin(theta);
  const double Q = M * r - m * r1;
  const double D = st2 - r * r + r1 * r1;
  out.p0 = M * M - m * m + 4.0 * (r * r - r1 * r1) + 4.0 * Q;
  out.ppi = M * M - m * m + 4.0 * (r * r - r1 * r1) - 4.0 * Q;
  if (std::abs(D) > 1e-14) {
    const double ckp = Q / (2.0 * D);
    if (std::abs(ckp) <= 1.0 + 1e-14) {
      out.coskprime = ckp;
      out.pkprime = M * M - m * m + 4.0 * st2 + Q * Q / D;
    }
  }
  return out;
}

std::vector<BoundaryCurve> m_r1_boundaries(double M, double r, double theta) {
  const double st2 = std::sin(theta) * std::sin(theta);
  std::vector<BoundaryCurve> curves;

  // P(0) = (M+2r)^2 - (m+2r1)^2 and P(pi) = (M-2r)^2 - (m-2r1)^2
  curves.push_back({"p0_plus", [M, r](double r1) -> std::vector<double> {
                      return {(M + 2.0 * r) - 2.0 * r1};
                    }});
  curves.push_back({"p0_minus", [M, r](double r1) -> std::vector<double> {
                      return {-(M + 2.0 * r) - 2.0 * r1};
                    }});
  curves.push_back({"ppi_plus", [M, r](double r1) -> std::vector<double> {
                      return {2.0 * r1 + (M - 2.0 * r)};
                    }});
  curves.push_back({"ppi_minus", [M, r](double r1) -> std::vector<double> {
                      return {2.0 * r1 - (M - 2.0 * r)};
                    }});

  // P(k') = 0: (r1^2 - D) m^2 - 2 M r r1 m + D (M^2 + 4 sin^2 t) + M^2 r^2 = 0,
  // D = sin^2 t - r^2 + r1^2. Roots kept only where the extreme point exists.
  curves.push_back({"pkprime", [M, r, st2](double r1) -> std::vector<double> {
                      const double D = st2 - r * r + r1 * r1;
                      if (std::abs(D) < 1e-14) return {};
                      const double A = r1 * r1 - D;
                      const double B = -2.0 * M * r * r1;
                      const double C = D * (M * M + 4.0 * st2) + M * M * r * r;
                      std::vector<double> roots;
                      if (std::abs(A) < 1e-14) {
                        if (std::abs(B) > 1e-14) roots.push_back(-C / B);
                      } else {
                        const double disc = B * B - 4.0 * A * C;
                        if (disc >= 0.0) {
                          const double s = std::sqrt(disc);
                          roots.push_back((-B + s) / (2.0 * A));
                          roots.push_back((-B - s) / (2.0 * A));
                        }
                      }
                      std::vector<double> kept;
                      for (double m : roots) {
                        const double ckp = (M * r - m * r1) / (2.0 * D);
                        if (std::abs(ckp) <= 1.0 + 1e-12) kept.push_back(m);
                      }
                      return kept;
                    }});

  // cos k' = +-1 existence edges: M r - m r1 = +-2 D
  for (int sign : {+1, -1}) {
    const std::string name = sign > 0 ? "coskp_plus" : "coskp_minus";
    curves.push_back({name, [M, r, st2, sign](double r1) -> std::vector<double> {
                        if (std::abs(r1) < 1e-14) return {};
                        const double D = st2 - r * r + r1 * r1;
                        return {(M * r - sign * 2.0 * D) / r1};
                      }});
  }
  return curves;
}

ThetaTransitions m_r1_theta_transitions(double M, double r, double m, double r1) {
  ThetaTransitions out;
  const double lo = 1e-3, hi = std::numbers::pi / 2.0 - 1e-3;

  // Overlap onset: E-(0) = E+(pi), i.e. 4 cos t = sqrt(P(0)) + sqrt(P(pi)).
  // P(0) and P(pi) do not depend on theta; require a real spectrum there.
  {
    const PExtremes pe = p_extremes(M, r, std::numbers::pi / 2.0, m, r1);
    if (pe.p0 >= 0.0 && pe.ppi >= 0.0) {
      const auto f = [&](double theta) {
        return 4.0 * std::cos(theta) - std::sqrt(pe.p0) - std::sqrt(pe.ppi);
      };
      const double fl = f(lo), fh = f(hi);
      if ((fl > 0.0) != (fh > 0.0)) out.overlap_theta = bisect(f, lo, hi, fl);
    }
  }

  // Touching onset: P(k') = 0 where the third extreme exists.
  {
    const auto g = [&](double theta) -> std::optional<double> {
      const PExtremes pe = p_extremes(M, r, theta, m, r1);
      return pe.pkprime;
    };
    const int n = 4096;
    double prev_t = 0.0;
    std::optional<double> prev_v;
    for (int i = 0; i <= n; ++i) {
      const double t = lo + (hi - lo) * i / n;
      const std::optional<double> v = g(t);
      if (prev_v && v && ((*prev_v > 0.0) != (*v > 0.0))) {
        const auto f = [&](double theta) { return g(theta).value_or(*v); };
        out.touching_theta = bisect(f, prev_t, t, *prev_v);
        break;
      }
      prev_t = t;
      prev_v = v;
    }
  }
  return out;
}

R2Conditions r2_conditions(double M, double r, double theta, double r2, double tol) {
  R2Conditions out;
  out.dp = std::abs(std::abs(M) - std::abs(2.0 * r)) <= tol;
  out.ep = std::abs(std::abs(r2) - std::abs(std::sin(theta))) <= tol &&
           std::abs(M) < std::abs(2.0 * r);
  return out;
}

bool mu_criterion(double M, double mu, double theta) {
  return std::sqrt(std::abs(M * M - mu * mu)) < std::abs(2.0 * std::sin(theta));
}

}  // namespace creutz
