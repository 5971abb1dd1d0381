#include "creutz/spectral.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <cmath>
#include <numbers>
#include <thread>

#include "creutz/localization.hpp"

namespace creutz {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

RealVector kgrid_uniform(int nk) {
  RealVector k(nk);
  for (int j = 0; j < nk; ++j) k[j] = kTwoPi * j / nk;
  return k;
}

// Golden-section minimization of a scalar function on [a, b].
double golden_min(const std::function<double(double)>& f, double a, double b, int iters = 80) {
  const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
  double x1 = b - phi * (b - a), x2 = a + phi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  for (int i = 0; i < iters && (b - a) > 1e-14; ++i) {
    if (f1 < f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = f(x2);
    }
  }
  return f1 < f2 ? x1 : x2;
}

// Minimum of |P(k)| over the Brillouin zone: grid scan plus local refinement.
double min_abs_p(const LadderParams& p, int nk, double* argmin = nullptr) {
  const auto f = [&](double k) { return std::abs(band_discriminant(bloch(p, k))); };
  double best = std::numeric_limits<double>::infinity();
  int jbest = 0;
  for (int j = 0; j < nk; ++j) {
    const double v = f(kTwoPi * j / nk);
    if (v < best) {
      best = v;
      jbest = j;
    }
  }
  const double h = kTwoPi / nk;
  const double k0 = golden_min(f, kTwoPi * jbest / nk - h, kTwoPi * jbest / nk + h);
  const double v0 = f(k0);
  if (v0 < best) {
    best = v0;
    if (argmin) *argmin = k0;
  } else if (argmin) {
    *argmin = kTwoPi * jbest / nk;
  }
  return best;
}

void run_parallel(int n, int threads, const std::function<void(int)>& work) {
  threads = std::max(1, threads);
  if (threads == 1 || n <= 1) {
    for (int i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < n; i = next.fetch_add(1)) work(i);
    });
  for (auto& th : pool) th.join();
}

}  // namespace

// ---------------------------------------------------------------------------

BandStructure bands(const LadderParams& p, int nk) {
  if (nk < 64) throw std::invalid_argument("bands: nk >= 64 required");
  BandStructure bs;
  bs.params = p;
  bs.kgrid = kgrid_uniform(nk);
  bs.Eplus.resize(nk);
  bs.Eminus.resize(nk);
  for (int j = 0; j < nk; ++j) {
    auto [ep, em] = eig2(bloch(p, bs.kgrid[j]));
    if (j > 0) {
      // keep each label on the branch closest to its previous value
      const double keep = std::abs(ep - bs.Eplus[j - 1]) + std::abs(em - bs.Eminus[j - 1]);
      const double swap = std::abs(em - bs.Eplus[j - 1]) + std::abs(ep - bs.Eminus[j - 1]);
      if (swap < keep) std::swap(ep, em);
    }
    bs.Eplus[j] = ep;
    bs.Eminus[j] = em;
  }
  return bs;
}

// ---------------------------------------------------------------------------

WindingResult winding_number(const LadderParams& p, Complex Eref, int nk) {
  if (nk < 8) throw std::invalid_argument("winding_number: nk too small");
  const RealVector ks = kgrid_uniform(nk);

  std::vector<Complex> det(nk);
  double min_dist = std::numeric_limits<double>::infinity();
  for (int j = 0; j < nk; ++j) {
    const auto c = bloch(p, ks[j]);
    const auto [ep, em] = eig2(c);
    min_dist = std::min({min_dist, std::abs(ep - Eref), std::abs(em - Eref)});
    det[j] = (c.h0 - Eref) * (c.h0 - Eref) - band_discriminant(c);
  }
  if (min_dist <= 1e-6)
    throw WindingResolutionError("winding_number: reference energy on the spectrum");

  double accum = 0.0;
  for (int j = 0; j < nk; ++j) {
    const Complex ratio = det[(j + 1) % nk] / det[j];
    accum += std::arg(ratio);  // wrapped to (-pi, pi]
  }
  WindingResult out;
  out.Eref = Eref;
  out.nk = nk;
  out.raw = accum / kTwoPi;
  out.w = static_cast<int>(std::lround(out.raw));
  if (std::abs(out.raw - out.w) >= 0.05)
    throw WindingResolutionError("winding_number: accumulated phase did not resolve; raise nk");
  return out;
}

// ---------------------------------------------------------------------------

std::string to_string(GapClass g) {
  switch (g) {
    case GapClass::RealLineGap: return "real_line_gap";
    case GapClass::ImaginaryLineGap: return "imaginary_line_gap";
    case GapClass::GaplessBandTouching: return "gapless_band_touching";
    case GapClass::GaplessOverlap: return "gapless_overlap";
    case GapClass::PointGapOnly: return "point_gap_only";
    case GapClass::Boundary: return "boundary";
  }
  return "unknown";
}

GapClass classify_gap(const LadderParams& p, int nk) {
  if (nk < 256) throw std::invalid_argument("classify_gap: nk >= 256 required");
  constexpr double kMargin = 1e-6;
  const RealVector ks = kgrid_uniform(nk);

  std::vector<Complex> P(nk);
  double max_imP = 0.0, scale = 0.0;
  for (int j = 0; j < nk; ++j) {
    P[j] = band_discriminant(bloch(p, ks[j]));
    max_imP = std::max(max_imP, std::abs(P[j].imag()));
    scale = std::max(scale, std::abs(P[j]));
  }

  if (max_imP <= 1e-9 * std::max(1.0, scale)) {
    // Real P(k): E+- = h0 +- sqrt(P) with sqrt real or purely imaginary.
    double pmin = std::numeric_limits<double>::infinity();
    double pmax = -std::numeric_limits<double>::infinity();
    for (int j = 0; j < nk; ++j) {
      pmin = std::min(pmin, P[j].real());
      pmax = std::max(pmax, P[j].real());
    }
    // refine the minimum of Re P (its zeros decide the touching)
    {
      const auto f = [&](double k) { return band_discriminant(bloch(p, k)).real(); };
      int jmin = 0, jmax = 0;
      for (int j = 0; j < nk; ++j) {
        if (P[j].real() == pmin) jmin = j;
        if (P[j].real() == pmax) jmax = j;
      }
      const double h = kTwoPi / nk;
      pmin = std::min(pmin, f(golden_min(f, ks[jmin] - h, ks[jmin] + h)));
      const auto fneg = [&](double k) { return -band_discriminant(bloch(p, k)).real(); };
      pmax = std::max(pmax, -fneg(golden_min(fneg, ks[jmax] - h, ks[jmax] + h)));
    }

    if (pmin > kMargin) {
      // both bands real-split by 2 sqrt(P); decide overlap along the real axis
      double max_re_minus = -std::numeric_limits<double>::infinity();
      double min_re_plus = std::numeric_limits<double>::infinity();
      for (int j = 0; j < nk; ++j) {
        const auto [ep, em] = eig2(bloch(p, ks[j]));
        max_re_minus = std::max(max_re_minus, em.real());
        min_re_plus = std::min(min_re_plus, ep.real());
      }
      const double sep = min_re_plus - max_re_minus;
      if (sep > kMargin) return GapClass::RealLineGap;
      if (sep < -kMargin) return GapClass::GaplessOverlap;
      return GapClass::Boundary;
    }
    if (pmax < -kMargin) return GapClass::ImaginaryLineGap;
    if (pmin < -kMargin && pmax > kMargin) return GapClass::GaplessBandTouching;
    return GapClass::Boundary;
  }

  // Genuinely complex P(k).
  const double min_absP = min_abs_p(p, nk);
  if (min_absP <= 1e-18 * std::max(1.0, scale)) return GapClass::GaplessBandTouching;
  if (2.0 * std::sqrt(min_absP) <= kMargin) return GapClass::Boundary;

  // Vertical separating line between the continuity-labeled bands.
  const BandStructure bs = bands(p, nk);
  double maxA = -std::numeric_limits<double>::infinity(), minA = std::numeric_limits<double>::infinity();
  double maxB = -std::numeric_limits<double>::infinity(), minB = std::numeric_limits<double>::infinity();
  for (int j = 0; j < nk; ++j) {
    maxA = std::max(maxA, bs.Eplus[j].real());
    minA = std::min(minA, bs.Eplus[j].real());
    maxB = std::max(maxB, bs.Eminus[j].real());
    minB = std::min(minB, bs.Eminus[j].real());
  }
  const double sep = std::max(minA - maxB, minB - maxA);
  if (sep > kMargin) return GapClass::RealLineGap;
  if (std::abs(sep) <= kMargin) return GapClass::Boundary;
  return GapClass::PointGapOnly;
}

// ---------------------------------------------------------------------------

std::vector<DegeneracyPoint> find_degeneracies(const LadderParams& p, int nk) {
  if (nk < 512) throw std::invalid_argument("find_degeneracies: nk >= 512 required");
  const RealVector ks = kgrid_uniform(nk);

  std::vector<Complex> P(nk);
  double scale = 0.0, max_imP = 0.0;
  for (int j = 0; j < nk; ++j) {
    P[j] = band_discriminant(bloch(p, ks[j]));
    scale = std::max(scale, std::abs(P[j]));
    max_imP = std::max(max_imP, std::abs(P[j].imag()));
  }
  const double tol_root = 1e-9 * std::max(1.0, scale);
  const bool realP = max_imP <= 1e-9 * std::max(1.0, scale);
  const double h = kTwoPi / nk;

  std::vector<double> roots;
  const auto add_root = [&](double k) {
    k = std::fmod(k, kTwoPi);
    if (k < 0.0) k += kTwoPi;
    for (double r : roots) {
      double d = std::abs(r - k);
      d = std::min(d, kTwoPi - d);
      if (d < 1e-6) return;
    }
    roots.push_back(k);
  };

  if (realP) {
    // sign-change bracketing with bisection on Re P
    const auto f = [&](double k) { return band_discriminant(bloch(p, k)).real(); };
    for (int j = 0; j < nk; ++j) {
      const double a = ks[j], b = ks[j] + h;
      double fa = P[j].real(), fb = P[(j + 1) % nk].real();
      if ((fa > 0.0) == (fb > 0.0)) continue;
      double lo = a, hi = b;
      for (int it = 0; it < 100; ++it) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if ((fm > 0.0) == (fa > 0.0)) {
          lo = mid;
          fa = fm;
        } else {
          hi = mid;
        }
      }
      add_root(0.5 * (lo + hi));
    }
  }

  // |P| minima (catches quadratic touchings and complex-P roots)
  const auto fabsP = [&](double k) { return std::abs(band_discriminant(bloch(p, k))); };
  for (int j = 0; j < nk; ++j) {
    const double prev = std::abs(P[(j + nk - 1) % nk]);
    const double cur = std::abs(P[j]);
    const double next = std::abs(P[(j + 1) % nk]);
    if (cur <= prev && cur <= next) {
      const double k0 = golden_min(fabsP, ks[j] - h, ks[j] + h);
      if (fabsP(k0) <= tol_root) add_root(k0);
    }
  }

  std::sort(roots.begin(), roots.end());
  std::vector<DegeneracyPoint> out;
  for (double k0 : roots) {
    const auto c = bloch(p, k0);
    const double vec_norm = std::sqrt(std::norm(c.hx) + std::norm(c.hy) + std::norm(c.hz));
    const double vec_scale = std::sqrt(std::max(1.0, scale));
    DegeneracyPoint d;
    d.k = k0;
    d.kind = vec_norm <= 1e-6 * vec_scale ? DegeneracyKind::DP : DegeneracyKind::EP;
    out.push_back(d);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

// theta = pi/2 with alpha = m = r1 = 0 leaves only sigma_x / sigma_z terms,
// so the per-cell sigma_y rotation makes H block-offdiagonal [[0,A],[B,0]]
// and the spectrum is +-sqrt(eig(A B)) at a quarter of the dense cost.
bool chiral_reducible(const LadderParams& p) {
  return p.alpha == 0.0 && p.m == 0.0 && p.r1 == 0.0 &&
         std::abs(std::cos(p.theta)) < 1e-12;
}

ComplexVector obc_eigenvalues(const LadderParams& p) {
  if (p.bc != Boundary::OBC || !chiral_reducible(p)) return eigenvalues_general(real_space(p));
  const ComplexMatrix H = real_space(p);
  const int L = p.L;
  ComplexMatrix A = ComplexMatrix::Zero(L, L), B = ComplexMatrix::Zero(L, L);
  constexpr Complex kI{0.0, 1.0};
  for (int x = 0; x < L; ++x) {
    const int lo = std::max(0, x - 1), hi = std::min(L - 1, x + 1);
    for (int y = lo; y <= hi; ++y) {
      const Complex m00 = H(2 * x, 2 * y), m01 = H(2 * x, 2 * y + 1);
      const Complex m10 = H(2 * x + 1, 2 * y), m11 = H(2 * x + 1, 2 * y + 1);
      A(x, y) = 0.5 * (m00 - kI * m01 - kI * m10 - m11);
      B(x, y) = 0.5 * (m00 + kI * m01 + kI * m10 - m11);
    }
  }
  const ComplexMatrix C = A * B;
  Eigen::ComplexSchur<ComplexMatrix> schur(C, false);
  if (schur.info() != Eigen::Success)
    throw EigensolverError("QR iteration failed to converge", schur.matrixT());
  ComplexVector values(2 * L);
  for (int i = 0; i < L; ++i) {
    const Complex s = std::sqrt(Complex(schur.matrixT()(i, i)));
    values[2 * i] = s;
    values[2 * i + 1] = -s;
  }
  std::sort(values.begin(), values.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  return values;
}

// Distance of one energy to the sampled PBC spectrum.
double pbc_distance(const std::vector<Complex>& samples, Complex e) {
  double d = std::numeric_limits<double>::infinity();
  for (const Complex& s : samples) d = std::min(d, std::abs(e - s));
  return d;
}

std::vector<Complex> sample_pbc(const LadderParams& p, int nk) {
  std::vector<Complex> out;
  out.reserve(2 * nk);
  for (int j = 0; j < nk; ++j) {
    const auto [ep, em] = eig2(bloch(p, kTwoPi * j / nk));
    out.push_back(ep);
    out.push_back(em);
  }
  return out;
}

double mode_dipr(const ComplexVector& v) { return dipr(mode_profile(v)); }

// Combination of v1, v2 minimizing the weight on the chosen half of the
// ladder, by the smallest generalized eigenvector of the half-space Gram
// pair. Returns the combo and its in-subspace complement, both normalized.
std::pair<ComplexVector, ComplexVector> half_space_split(const ComplexVector& v1,
                                                         const ComplexVector& v2,
                                                         bool minimize_right) {
  const int n = static_cast<int>(v1.size());
  const int mid = n / 2;  // first half of the cells (interleaved basis)
  const auto seg = [&](const ComplexVector& v) -> ComplexVector {
    return minimize_right ? ComplexVector(v.tail(n - mid)) : ComplexVector(v.head(mid));
  };
  const ComplexVector s1 = seg(v1), s2 = seg(v2);
  Eigen::Matrix2cd G, H;
  H << s1.dot(s1), s1.dot(s2), s2.dot(s1), s2.dot(s2);
  G << v1.dot(v1), v1.dot(v2), v2.dot(v1), v2.dot(v2);
  if (std::abs(G.determinant()) < 1e-12) return {v1, v2};  // parallel vectors
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::Matrix2cd> ges(H, G);
  const Eigen::Vector2cd c1 = ges.eigenvectors().col(0);
  const Eigen::Vector2cd c2 = ges.eigenvectors().col(1);
  ComplexVector w1 = c1[0] * v1 + c1[1] * v2;
  ComplexVector w2 = c2[0] * v1 + c2[1] * v2;
  if (w1.norm() < 1e-8 || w2.norm() < 1e-8) return {v1, v2};
  w1.normalize();
  w2.normalize();
  return {w1, w2};
}

// For a numerically degenerate pair the solver may return spread-out
// combinations; the physical pair is recovered by picking the maximally
// directed combinations inside the two-dimensional eigenspace.
std::pair<double, double> best_pair_dipr(const ComplexVector& v1, const ComplexVector& v2) {
  std::vector<std::pair<double, double>> candidates;
  candidates.emplace_back(mode_dipr(v1), mode_dipr(v2));
  ComplexVector sum = v1 + v2, dif = v1 - v2;
  if (sum.norm() > 1e-8 && dif.norm() > 1e-8) {
    sum.normalize();
    dif.normalize();
    candidates.emplace_back(mode_dipr(sum), mode_dipr(dif));
  }
  for (bool right : {false, true}) {
    const auto [w1, w2] = half_space_split(v1, v2, right);
    candidates.emplace_back(mode_dipr(w1), mode_dipr(w2));
  }
  std::pair<double, double> best = candidates.front();
  double score = std::min(std::abs(best.first), std::abs(best.second));
  for (const auto& c : candidates) {
    const double s = std::min(std::abs(c.first), std::abs(c.second));
    if (s > score) {
      score = s;
      best = c;
    }
  }
  return best;
}

struct EdgeAnalysis {
  std::vector<EdgeMode> modes;      // candidates (paired first by index order)
  std::vector<bool> is_edge;        // per spectrum index: member of a pair
  std::vector<double> dipr_values;  // per spectrum index (may be NaN on the fast path)
  int pairs = 0;
};

// Shared edge-mode logic. `vec_of` supplies the eigenvector for an index on
// demand so the eigenvalue-only path can defer the expensive part.
EdgeAnalysis analyze_edges(const ComplexVector& values,
                           const std::function<ComplexVector(int)>& vec_of,
                           const std::function<std::pair<double, double>(int, int)>& pair_dipr,
                           const std::vector<Complex>& pbc, const EdgeOptions& opt) {
  const int n = static_cast<int>(values.size());
  EdgeAnalysis out;
  out.is_edge.assign(n, false);
  out.dipr_values.assign(n, std::numeric_limits<double>::quiet_NaN());

  double emax = 0.0;
  for (int i = 0; i < n; ++i) emax = std::max(emax, std::abs(values[i]));
  const double deg_tol = opt.deg_rel * std::max(emax, 1e-300);

  std::vector<int> isolated;
  for (int i = 0; i < n; ++i)
    if (pbc_distance(pbc, values[i]) > opt.gap_distance) isolated.push_back(i);

  // pair isolated modes by energy degeneracy (greedy nearest)
  std::vector<int> partner(n, -1);
  std::vector<bool> used(isolated.size(), false);
  for (std::size_t a = 0; a < isolated.size(); ++a) {
    if (used[a]) continue;
    int best = -1;
    double bestd = deg_tol;
    for (std::size_t b = a + 1; b < isolated.size(); ++b) {
      if (used[b]) continue;
      const double d = std::abs(values[isolated[a]] - values[isolated[b]]);
      if (d <= bestd) {
        bestd = d;
        best = static_cast<int>(b);
      }
    }
    if (best >= 0) {
      used[a] = used[best] = true;
      partner[isolated[a]] = isolated[best];
      partner[isolated[best]] = isolated[a];
    }
  }

  for (int i : isolated) {
    const int j = partner[i];
    if (j >= 0 && j < i) continue;  // handled with its partner
    if (j >= 0) {
      const auto [da, db] = pair_dipr(i, j);
      out.dipr_values[i] = da;
      out.dipr_values[j] = db;
      if (std::abs(da) > opt.dipr_min && std::abs(db) > opt.dipr_min) {
        out.is_edge[i] = out.is_edge[j] = true;
        ++out.pairs;
        out.modes.push_back({i, values[i], j});
        out.modes.push_back({j, values[j], i});
      } else if (std::abs(da) > opt.dipr_min) {
        out.modes.push_back({i, values[i], std::nullopt});
      } else if (std::abs(db) > opt.dipr_min) {
        out.modes.push_back({j, values[j], std::nullopt});
      }
    } else {
      const double d = mode_dipr(vec_of(i));
      out.dipr_values[i] = d;
      if (std::abs(d) > opt.dipr_min) out.modes.push_back({i, values[i], std::nullopt});
    }
  }
  std::sort(out.modes.begin(), out.modes.end(),
            [](const EdgeMode& a, const EdgeMode& b) { return a.index < b.index; });
  return out;
}

}  // namespace

SpectrumOBC solve_obc(const LadderParams& p, const EdgeOptions& opt) {
  if (p.bc != Boundary::OBC) throw std::invalid_argument("solve_obc: bc must be OBC");
  const ComplexMatrix H = real_space(p);
  EigenDecomposition d = eigen_general(H);

  SpectrumOBC s;
  s.params = p;
  s.values = std::move(d.values);
  s.vectors = std::move(d.vectors);
  const int n = static_cast<int>(s.values.size());

  s.dipr.resize(n);
  for (int i = 0; i < n; ++i) s.dipr[i] = mode_dipr(s.vectors.col(i));

  const auto pbc = sample_pbc(p.with_bc(Boundary::PBC), opt.nk_ref);
  EdgeAnalysis ea = analyze_edges(
      s.values, [&](int i) { return s.vectors.col(i); },
      [&](int i, int j) {
        const auto [da, db] = best_pair_dipr(s.vectors.col(i), s.vectors.col(j));
        return std::pair<double, double>(da, db);
      },
      pbc, opt);
  s.is_edge = std::move(ea.is_edge);

  // band split of the bulk by Re(E - median); midpoints go to "+"
  std::vector<int> bulk;
  for (int i = 0; i < n; ++i)
    if (!s.is_edge[i]) bulk.push_back(i);
  std::vector<double> re;
  re.reserve(bulk.size());
  for (int i : bulk) re.push_back(s.values[i].real());
  std::sort(re.begin(), re.end());
  double median = 0.0;
  if (!re.empty())
    median = re.size() % 2 == 1 ? re[re.size() / 2]
                                : 0.5 * (re[re.size() / 2 - 1] + re[re.size() / 2]);
  s.band.assign(n, 0);
  for (int i : bulk) s.band[i] = s.values[i].real() >= median ? +1 : -1;
  return s;
}

std::vector<EdgeMode> find_edge_modes(const LadderParams& p, const EdgeOptions& opt) {
  LadderParams q = p.with_bc(Boundary::OBC);
  if (q.L < 20) throw std::invalid_argument("find_edge_modes: L >= 20 required");
  const ComplexMatrix H = real_space(q);
  const EigenDecomposition d = eigen_general(H);
  const auto pbc = sample_pbc(q.with_bc(Boundary::PBC), opt.nk_ref);
  EdgeAnalysis ea = analyze_edges(
      d.values, [&](int i) { return d.vectors.col(i); },
      [&](int i, int j) {
        const auto [da, db] = best_pair_dipr(d.vectors.col(i), d.vectors.col(j));
        return std::pair<double, double>(da, db);
      },
      pbc, opt);
  return ea.modes;
}

int edge_pair_count(const LadderParams& p, const EdgeOptions& opt) {
  LadderParams q = p.with_bc(Boundary::OBC);
  const ComplexVector values = obc_eigenvalues(q);
  const auto pbc = sample_pbc(q.with_bc(Boundary::PBC), opt.nk_ref);

  // eigenvectors only for the few candidate indices, via inverse iteration
  ComplexMatrix H;  // built lazily; most cells never need a vector
  const auto matrix = [&]() -> const ComplexMatrix& {
    if (H.rows() == 0) H = real_space(q);
    return H;
  };
  EdgeAnalysis ea = analyze_edges(
      values, [&](int i) { return inverse_iteration(matrix(), values[i]); },
      [&](int i, int j) {
        const auto [w1, w2] = invariant_pair_basis(matrix(), values[i], values[j]);
        auto cand = best_pair_dipr(w1, w2);
        // Rayleigh-Ritz eigenvectors inside the subspace; a near-defective
        // pair has one independent eigendirection, which the dense solver
        // reports for both indices.
        ComplexMatrix V(w1.size(), 2);
        V.col(0) = w1;
        V.col(1) = w2;
        const Eigen::Matrix2cd T = V.adjoint() * (matrix() * V);
        Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(T);
        if (es.info() == Eigen::Success) {
          const ComplexVector u1 = (V * es.eigenvectors().col(0)).normalized();
          const ComplexVector u2 = (V * es.eigenvectors().col(1)).normalized();
          const std::pair<double, double> rr(mode_dipr(u1), mode_dipr(u2));
          if (std::min(std::abs(rr.first), std::abs(rr.second)) >
              std::min(std::abs(cand.first), std::abs(cand.second)))
            cand = rr;
        }
        return cand;
      },
      pbc, opt);
  return ea.pairs;
}

PhaseLabel phase_label(const LadderParams& p, int nk, const EdgeOptions& opt) {
  PhaseLabel label;
  label.gap = classify_gap(p, nk);
  const int pairs = edge_pair_count(p, opt);
  const bool gap_supports_modes =
      label.gap == GapClass::RealLineGap || label.gap == GapClass::PointGapOnly;
  if (gap_supports_modes)
    label.topological = pairs > 0 ? Topology::EdgeModes : Topology::Trivial;
  else
    label.topological = Topology::NotApplicable;
  return label;
}

// ---------------------------------------------------------------------------

namespace {

// Andrew monotone chain; returns the hull vertices counterclockwise.
std::vector<Complex> convex_hull(std::vector<Complex> pts) {
  std::sort(pts.begin(), pts.end(), [](Complex a, Complex b) {
    if (a.real() != b.real()) return a.real() < b.real();
    return a.imag() < b.imag();
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const int n = static_cast<int>(pts.size());
  if (n < 3) return pts;
  const auto cross = [](Complex o, Complex a, Complex b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) -
           (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::vector<Complex> hull(2 * n);
  int k = 0;
  for (int i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  for (int i = n - 2, t = k + 1; i >= 0; --i) {
    while (k >= t && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

bool inside_hull(const std::vector<Complex>& hull, Complex q, double margin) {
  const int n = static_cast<int>(hull.size());
  if (n < 3) return false;
  for (int i = 0; i < n; ++i) {
    const Complex a = hull[i], b = hull[(i + 1) % n];
    const double cr = (b.real() - a.real()) * (q.imag() - a.imag()) -
                      (b.imag() - a.imag()) * (q.real() - a.real());
    const double len = std::abs(b - a);
    if (len == 0.0 || cr / len < margin) return false;
  }
  return true;
}

}  // namespace

bool nhse_predicate(const LadderParams& p, int nk) {
  if (nk < 256) throw std::invalid_argument("nhse_predicate: nk >= 256 required");
  const auto samples = sample_pbc(p.with_bc(Boundary::PBC), nk);
  const auto hull = convex_hull(samples);
  if (hull.size() < 3) return false;

  double diam = 0.0;
  for (const Complex& a : hull)
    for (const Complex& b : hull) diam = std::max(diam, std::abs(a - b));
  if (diam <= 0.0) return false;
  const double margin = 1e-3 * diam;

  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const Complex& s : hull) {
    xmin = std::min(xmin, s.real());
    xmax = std::max(xmax, s.real());
    ymin = std::min(ymin, s.imag());
    ymax = std::max(ymax, s.imag());
  }

  const int grid = 13;
  for (int i = 1; i < grid; ++i) {
    for (int j = 1; j < grid; ++j) {
      const Complex q(xmin + (xmax - xmin) * i / grid, ymin + (ymax - ymin) * j / grid);
      if (!inside_hull(hull, q, margin)) continue;
      if (pbc_distance(samples, q) < margin) continue;
      try {
        if (winding_number(p, q, nk).w != 0) return true;
      } catch (const WindingResolutionError&) {
        try {
          if (winding_number(p, q, 2 * nk).w != 0) return true;
        } catch (const WindingResolutionError&) {
          // unresolvable reference point; skip it
        }
      }
    }
  }
  return false;
}

// ---------------------------------------------------------------------------

namespace {

// In-gap pair presence for the bulk-boundary comparison: a degenerate pair
// separated both from the sampled PBC spectrum and from the rest of the OBC
// spectrum. Localization is deliberately not required here: an edge mode
// delocalizes smoothly on approach to its transition, while its energy
// isolation collapses only at the transition itself.
bool has_ingap_pair(const ComplexVector& values, const std::vector<Complex>& pbc,
                    const EdgeOptions& opt) {
  const int n = static_cast<int>(values.size());
  double emax = 0.0;
  for (int i = 0; i < n; ++i) emax = std::max(emax, std::abs(values[i]));
  const double deg_tol = opt.deg_rel * std::max(emax, 1e-300);

  for (int i = 0; i < n; ++i) {
    if (pbc_distance(pbc, values[i]) <= opt.gap_distance) continue;
    for (int j = i + 1; j < n; ++j) {
      if (std::abs(values[i] - values[j]) > deg_tol) continue;
      if (pbc_distance(pbc, values[j]) <= opt.gap_distance) continue;
      double rest = std::numeric_limits<double>::infinity();
      for (int k = 0; k < n; ++k) {
        if (k == i || k == j) continue;
        rest = std::min(rest, std::abs(values[k] - values[i]));
        rest = std::min(rest, std::abs(values[k] - values[j]));
      }
      if (rest > opt.gap_distance) return true;
    }
  }
  return false;
}

}  // namespace

BbcReport bbc_check(const LadderParams& base, const std::string& axis, double from, double to,
                    int npoints, int nk, const EdgeOptions& opt, int threads) {
  if (npoints < 50) throw std::invalid_argument("bbc_check: at least 50 sweep points required");
  if (!is_sweepable_field(axis)) throw std::invalid_argument("bbc_check: bad axis '" + axis + "'");
  const double step = (to - from) / (npoints - 1);

  std::vector<double> ts(npoints);
  for (int i = 0; i < npoints; ++i) ts[i] = from + step * i;

  const auto at = [&](double t) {
    LadderParams q = base;
    set_field(q, axis, t);
    return q;
  };

  // PBC side: minimal band distance 2 sqrt(min |P|) along the sweep.
  // OBC side: presence of an isolated degenerate pair.
  std::vector<double> dmin(npoints);
  std::vector<int> pairs(npoints);
  run_parallel(npoints, threads, [&](int i) {
    const LadderParams q = at(ts[i]);
    dmin[i] = 2.0 * std::sqrt(min_abs_p(q.with_bc(Boundary::PBC), nk));
    const ComplexVector values = obc_eigenvalues(q.with_bc(Boundary::OBC));
    const auto pbc = sample_pbc(q.with_bc(Boundary::PBC), opt.nk_ref);
    pairs[i] = has_ingap_pair(values, pbc, opt) ? 1 : 0;
  });

  double dscale = 0.0;
  for (double d : dmin) dscale = std::max(dscale, d);
  const double close_tol = 1e-5 * (1.0 + dscale);

  BbcReport report;
  const auto dmin_of_t = [&](double t) { return 2.0 * std::sqrt(min_abs_p(at(t), nk)); };
  for (int i = 0; i < npoints; ++i) {
    const bool is_local_min = (i == 0 || dmin[i] <= dmin[i - 1]) &&
                              (i == npoints - 1 || dmin[i] <= dmin[i + 1]);
    if (!is_local_min) continue;
    const double a = ts[std::max(0, i - 1)], b = ts[std::min(npoints - 1, i + 1)];
    const double tstar = a == b ? a : golden_min(dmin_of_t, a, b, 60);
    if (dmin_of_t(tstar) < close_tol) {
      bool dup = false;
      for (double x : report.pbc_closing) dup |= std::abs(x - tstar) <= std::abs(step);
      if (!dup) report.pbc_closing.push_back(tstar);
    }
  }

  for (int i = 0; i + 1 < npoints; ++i) {
    const bool a = pairs[i] > 0, b = pairs[i + 1] > 0;
    if (a != b) report.obc_closing.push_back(0.5 * (ts[i] + ts[i + 1]));
  }

  const auto sets_agree = [&](const std::vector<double>& A, const std::vector<double>& B) {
    if (A.size() != B.size()) return false;
    for (std::size_t i = 0; i < A.size(); ++i)
      if (std::abs(A[i] - B[i]) > std::abs(step) + 1e-12) return false;
    return true;
  };
  std::sort(report.pbc_closing.begin(), report.pbc_closing.end());
  std::sort(report.obc_closing.begin(), report.obc_closing.end());
  report.conventional_bbc = sets_agree(report.pbc_closing, report.obc_closing);
  return report;
}

}  // namespace creutz
