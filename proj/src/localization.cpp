#include "creutz/localization.hpp"

#include <cmath>
#include <stdexcept>

namespace creutz {

ModeProfile mode_profile(const ComplexVector& v) {
  if (v.size() % 2 != 0 || v.size() < 2)
    throw std::invalid_argument("mode_profile: expected interleaved (A,B) amplitudes");
  const int L = static_cast<int>(v.size() / 2);
  ModeProfile m;
  m.a.resize(L);
  m.b.resize(L);
  for (int x = 0; x < L; ++x) {
    m.a[x] = v[2 * x];
    m.b[x] = v[2 * x + 1];
  }
  return m;
}

double dipr(const ModeProfile& mode) {
  const int L = static_cast<int>(mode.a.size());
  if (L < 3) throw std::invalid_argument("dipr: L >= 3 required");
  if (mode.b.size() != mode.a.size()) throw std::invalid_argument("dipr: leg size mismatch");
  const double norm = mode.a.squaredNorm() + mode.b.squaredNorm();
  if (std::abs(norm - 1.0) > 1e-8) throw std::invalid_argument("dipr: mode must be normalized");
  const double xc = 0.5 * (L + 1);
  double sum = 0.0;
  for (int x = 1; x <= L; ++x) {
    const double wa = std::norm(mode.a[x - 1]);
    const double wb = std::norm(mode.b[x - 1]);
    sum += (x - xc) * (wa * wa + wb * wb);
  }
  return sum / (0.5 * (L - 1));
}

DiprReport band_dipr(const SpectrumOBC& s) {
  const int n = static_cast<int>(s.values.size());
  if (static_cast<int>(s.band.size()) != n)
    throw std::invalid_argument("band_dipr: spectrum lacks band assignment");
  const int L = s.params.L;

  bool has_edge_pair = false;
  for (bool e : s.is_edge) has_edge_pair |= e;
  const double N = has_edge_pair ? L - 1 : L;

  DiprReport rep;
  rep.per_mode = s.dipr;
  double sp = 0.0, sm = 0.0;
  for (int i = 0; i < n; ++i) {
    if (s.is_edge[i]) continue;
    if (s.band[i] > 0)
      sp += s.dipr[i];
    else
      sm += s.dipr[i];
  }
  rep.Ibar_plus = sp / N;
  rep.Ibar_minus = sm / N;
  rep.product = rep.Ibar_plus * rep.Ibar_minus;
  return rep;
}

std::pair<RealVector, RealVector> density_profile(const SpectrumOBC& s) {
  const int n = static_cast<int>(s.values.size());
  if (static_cast<int>(s.band.size()) != n)
    throw std::invalid_argument("density_profile: spectrum lacks band assignment");
  const int L = s.params.L;
  RealVector rp = RealVector::Zero(L), rm = RealVector::Zero(L);
  for (int i = 0; i < n; ++i) {
    if (s.is_edge[i]) continue;
    RealVector& r = s.band[i] > 0 ? rp : rm;
    for (int x = 0; x < L; ++x)
      r[x] += std::norm(s.vectors(2 * x, i)) + std::norm(s.vectors(2 * x + 1, i));
  }
  return {rp, rm};
}

double kappa_u(double M, double mu) {
  if (std::abs(std::abs(M) - std::abs(mu)) < 1e-300)
    throw std::invalid_argument("kappa_u diverges at |M| = |mu|");
  return std::log(std::sqrt(std::abs((M + mu) / (M - mu))));
}

double fit_kappa(const ModeProfile& mode) {
  const int L = static_cast<int>(mode.a.size());
  if (L < 16) throw std::invalid_argument("fit_kappa: window too short, L >= 16 required");

  const int x0 = (L + 3) / 4;          // ceil(L/4)
  const int x1 = (3 * L) / 4;          // floor(3L/4)
  double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
  int count = 0;
  for (int x = x0; x <= x1; ++x) {
    const double w = std::norm(mode.a[x - 1]) + std::norm(mode.b[x - 1]);
    if (w <= 0.0) continue;
    const double y = 0.5 * std::log(w);
    sx += x;
    sy += y;
    sxx += static_cast<double>(x) * x;
    sxy += x * y;
    ++count;
  }
  if (count < 4) throw std::invalid_argument("fit_kappa: window too short");
  const double denom = count * sxx - sx * sx;
  const double slope = (count * sxy - sx * sy) / denom;
  return std::abs(slope);
}

}  // namespace creutz
