#include "ahls/angular.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <complex>
#define lapack_complex_float std::complex<float>
#define lapack_complex_double std::complex<double>
#include <lapacke.h>

namespace ahls::angular {

namespace {

constexpr double pi = std::numbers::pi;

double wavenumber(int k, double B) { return 2.0 * pi * k / B; }

bool within(double a, double b, double gap) { return std::abs(b - a) <= gap * std::max(1.0, std::abs(a)); }

// eigenvalues this close are degenerate up to roundoff; their eigenvectors are
// only defined as a subspace
constexpr double degenerate_gap = 1e-10;

struct RawSolve {
  std::vector<double> w;
  Eigen::MatrixXcd z;  // columns are eigenvectors
};

int bandwidth(const std::vector<cplx>& bh) {
  double mx = 0.0;
  for (const auto& c : bh) mx = std::max(mx, std::abs(c));
  int w = 0;
  for (int m = 1; m < static_cast<int>(bh.size()); ++m) {
    if (std::abs(bh[m]) > 1e-14 * mx) w = m;
  }
  return w;
}

RawSolve band_solve(const metric::LiouvilleMetric& m, double kappa, int K, int count, bool vectors = true) {
  const int n = 2 * K + 1;
  const auto bh = fourier_coefficients(m, 2 * K);
  const int w = bandwidth(bh);
  const int ldab = w + 1;
  std::vector<lapack_complex_double> ab(static_cast<size_t>(ldab) * n);
  // upper storage: ab[w + i - j, j] = H(i, j) for j - w <= i <= j
  for (int j = 0; j < n; ++j) {
    for (int i = std::max(0, j - w); i <= j; ++i) {
      cplx h = kappa * std::conj(bh[j - i]);  // b̂_{i-j} = conj(b̂_{j-i})
      if (i == j) {
        const double kw = wavenumber(i - K, m.B());
        h = kw * kw + kappa * bh[0].real();
      }
      ab[static_cast<size_t>(w + i - j) + static_cast<size_t>(j) * ldab] = h;
    }
  }
  std::vector<lapack_complex_double> q(vectors ? static_cast<size_t>(n) * n : 1);
  std::vector<double> wv(n);
  std::vector<lapack_complex_double> zv(vectors ? static_cast<size_t>(n) * count : 1);
  std::vector<lapack_int> ifail(n);
  lapack_int found = 0;
  const double abstol = 2.0 * LAPACKE_dlamch('S');
  const lapack_int info = LAPACKE_zhbevx(LAPACK_COL_MAJOR, vectors ? 'V' : 'N', 'I', 'U', n, w, ab.data(), ldab, q.data(),
                                         n, 0.0, 0.0, 1, count, abstol, &found, wv.data(), zv.data(), n,
                                         ifail.data());
  if (info != 0 || found != count) {
    throw Error(Errc::resolution_insufficient, "band eigensolver failed (info " + std::to_string(info) + ")");
  }
  RawSolve r;
  r.w.assign(wv.begin(), wv.begin() + count);
  if (!vectors) return r;
  r.z.resize(n, count);
  for (int c = 0; c < count; ++c) {
    for (int i = 0; i < n; ++i) {
      r.z(i, c) = zv[static_cast<size_t>(i) + static_cast<size_t>(c) * n];
    }
  }
  return r;
}

// Deterministic basis of a degenerate eigenspace: greedily take the Fourier
// mode with the largest projection, orthogonalize, repeat. Then make the
// largest coefficient of each vector real positive.
Eigen::MatrixXcd canonical_basis(const Eigen::MatrixXcd& V) {
  const int n = static_cast<int>(V.rows()), d = static_cast<int>(V.cols());
  // e_i projected onto the eigenspace has coordinates conj(V.row(i)) there
  const Eigen::MatrixXcd W = V.adjoint();
  Eigen::MatrixXcd coords(d, d);
  std::vector<bool> used(n, false);
  for (int c = 0; c < d; ++c) {
    int best = -1;
    double best_norm = -1.0;
    Eigen::VectorXcd best_vec;
    for (int i = 0; i < n; ++i) {
      if (used[i]) continue;
      Eigen::VectorXcd p = W.col(i);
      for (int j = 0; j < c; ++j) p -= coords.col(j) * coords.col(j).dot(p);
      const double nr = p.norm();
      if (nr > best_norm * (1.0 + 1e-12)) {
        best_norm = nr;
        best = i;
        best_vec = p;
      }
    }
    used[best] = true;
    coords.col(c) = best_vec / best_norm;
  }
  Eigen::MatrixXcd out = V * coords;
  for (int c = 0; c < d; ++c) {
    double mx = 0.0;
    for (int i = 0; i < n; ++i) mx = std::max(mx, std::abs(out(i, c)));
    int pivot = 0;
    for (int i = 0; i < n; ++i) {
      if (std::abs(out(i, c)) >= (1.0 - 1e-8) * mx) {
        pivot = i;
        break;
      }
    }
    out.col(c) *= std::conj(out(pivot, c)) / std::abs(out(pivot, c));
  }
  return out;
}

Eigen::VectorXcd padded(const AngularSpectrum& s, int n, int K) {
  Eigen::VectorXcd v = Eigen::VectorXcd::Zero(2 * K + 1);
  const auto& c = s.coefficients[n];
  for (int i = 0; i < s.modes(); ++i) v(i - s.K + K) = c(i);
  return v;
}

}  // namespace

cplx AngularSpectrum::eigenfunction(int n, double y) const {
  const auto& c = coefficients.at(n);
  cplx sum = 0.0;
  for (int i = 0; i < modes(); ++i) sum += c(i) * std::polar(1.0, wavenumber(i - K, B) * y);
  return sum / std::sqrt(B);
}

cplx AngularSpectrum::eigenfunction_dd(int n, double y) const {
  const auto& c = coefficients.at(n);
  cplx sum = 0.0;
  for (int i = 0; i < modes(); ++i) {
    const double kw = wavenumber(i - K, B);
    sum -= kw * kw * c(i) * std::polar(1.0, kw * y);
  }
  return sum / std::sqrt(B);
}

std::vector<cplx> fourier_coefficients(const metric::LiouvilleMetric& m, int max_m) {
  int N = 4096;
  while (N < 2 * max_m + 2) N *= 2;
  std::vector<double> samples(N);
  for (int j = 0; j < N; ++j) samples[j] = m.b(m.B() * j / N);
  std::vector<cplx> tw(N);
  for (int j = 0; j < N; ++j) tw[j] = std::polar(1.0, -2.0 * pi * j / N);
  std::vector<cplx> out(max_m + 1);
  for (int k = 0; k <= max_m; ++k) {
    cplx s = 0.0;
    size_t idx = 0;
    for (int j = 0; j < N; ++j) {
      s += samples[j] * tw[idx];
      idx += k;
      if (idx >= static_cast<size_t>(N)) idx %= N;
    }
    out[k] = s / double(N);
  }
  return out;
}

Eigen::MatrixXcd galerkin_matrix(const metric::LiouvilleMetric& m, double lambda, int K) {
  const double kappa = lambda * lambda + 0.25;
  const int n = 2 * K + 1;
  const auto bh = fourier_coefficients(m, 2 * K);
  Eigen::MatrixXcd H(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const int d = i - j;
      H(i, j) = kappa * (d >= 0 ? bh[d] : std::conj(bh[-d]));
    }
    const double kw = wavenumber(i - K, m.B());
    H(i, i) = kw * kw + kappa * bh[0].real();
  }
  return H;
}

AngularSpectrum solve_angular(const metric::LiouvilleMetric& m, double lambda, int n_max, int modes,
                              bool check_resolution) {
  if (lambda == 0.0) throw Error(Errc::zero_energy, "λ = 0 is excluded");
  if (n_max < 0) throw Error(Errc::domain_error, "n_max must be non-negative");
  if (modes == 0) modes = std::max(4 * n_max + 1, 64);
  if (modes < 4 * n_max) throw Error(Errc::domain_error, "modes must be at least 4 n_max");
  AngularSpectrum s;
  s.lambda = lambda;
  s.B = m.B();
  s.kappa = lambda * lambda + 0.25;
  s.K = modes / 2;
  const int count = n_max + 1;
  auto raw = band_solve(m, s.kappa, s.K, count);

  if (check_resolution) {
    const auto fine = band_solve(m, s.kappa, 2 * s.K, count, false);
    for (int i = 0; i < count; ++i) {
      const double d = std::abs(fine.w[i] - raw.w[i]) / std::max(1.0, std::abs(fine.w[i]));
      s.doubling_change = std::max(s.doubling_change, d);
    }
    if (s.doubling_change > 1e-9) {
      throw Error(Errc::resolution_insufficient,
                  "eigenvalues moved by " + std::to_string(s.doubling_change) + " under mode doubling");
    }
  }

  s.eigenvalues = raw.w;
  s.coefficients.resize(count);
  s.cluster.resize(count);
  for (int first = 0; first < count;) {
    int last = first;
    while (last + 1 < count && within(raw.w[first], raw.w[last + 1], degenerate_gap)) ++last;
    const auto basis = canonical_basis(raw.z.middleCols(first, last - first + 1));
    for (int i = first; i <= last; ++i) s.coefficients[i] = basis.col(i - first);
    first = last + 1;
  }
  int id = 0;
  for (int n = 0; n < count; ++n) {
    if (n > 0 && !within(raw.w[n - 1], raw.w[n], cluster_gap)) ++id;
    s.cluster[n] = id;
  }
  return s;
}

MomentumChannel momentum(int n, double mu_sq) {
  MomentumChannel c;
  c.n = n;
  c.mu_sq = mu_sq;
  if (std::abs(mu_sq) <= 1e-12) {
    c.mu = 0.0;
    c.on_branch_cut = true;
  } else if (mu_sq > 0.0) {
    c.mu = std::sqrt(mu_sq);
  } else {
    c.mu = cplx(0.0, std::sqrt(-mu_sq));
  }
  return c;
}

std::vector<MomentumChannel> momenta(const AngularSpectrum& s) {
  std::vector<MomentumChannel> out;
  for (int n = 0; n < s.size(); ++n) out.push_back(momentum(n, s.eigenvalues[n]));
  return out;
}

WeylDiagnostics weyl_check(const AngularSpectrum& s) {
  if (s.size() <= 100) throw Error(Errc::domain_error, "Weyl check needs n_max ≥ 100");
  WeylDiagnostics d;
  d.limit = pi * pi / (s.B * s.B);
  for (int n = 1; n < s.size(); ++n) d.ratio.push_back(s.eigenvalues[n] / (double(n) * n));
  d.final_deviation = std::abs(d.ratio.back() - d.limit) / d.limit;
  d.passed = d.final_deviation < 0.02;
  return d;
}

MuntzDiagnostics muntz_partial_sums(const AngularSpectrum& s) {
  MuntzDiagnostics d;
  d.predicted_slope = s.B / pi;
  double sum = 0.0;
  for (int n = 0; n < s.size(); ++n) {
    const auto ch = momentum(n, s.eigenvalues[n]);
    if (!ch.on_branch_cut) sum += 1.0 / std::abs(ch.mu);
    d.partial_sums.push_back(sum);
  }
  // least squares on the upper three quarters of the index range
  const int lo = std::max(1, s.size() / 4);
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  int cnt = 0;
  for (int n = lo; n < s.size(); ++n) {
    const double x = std::log(double(n)), y = d.partial_sums[n];
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
    ++cnt;
  }
  if (cnt >= 2) d.slope = (cnt * sxy - sx * sy) / (cnt * sxx - sx * sx);
  return d;
}

double residual(const AngularSpectrum& s, const metric::LiouvilleMetric& m, int n, int grid) {
  double num = 0.0, den = 0.0;
  for (int j = 0; j < grid; ++j) {
    const double y = s.B * j / grid;
    const cplx Y = s.eigenfunction(n, y);
    const cplx r = -s.eigenfunction_dd(n, y) + (s.kappa * m.b(y) - s.eigenvalues[n]) * Y;
    num += std::norm(r);
    den += std::norm(Y);
  }
  return std::sqrt(num / den);
}

double gram_defect(const AngularSpectrum& s) {
  double worst = 0.0;
  for (int i = 0; i < s.size(); ++i) {
    for (int j = i; j < s.size(); ++j) {
      const cplx g = s.coefficients[i].dot(s.coefficients[j]);
      worst = std::max(worst, std::abs(g - (i == j ? 1.0 : 0.0)));
    }
  }
  return worst;
}

std::vector<std::pair<int, int>> clusters(const AngularSpectrum& s) {
  std::vector<std::pair<int, int>> out;
  for (int n = 0; n < s.size(); ++n) {
    if (out.empty() || s.cluster[n] != s.cluster[out.back().first]) {
      out.emplace_back(n, n);
    } else {
      out.back().second = n;
    }
  }
  return out;
}

double subspace_angle(const AngularSpectrum& s1, int first1, int last1, const AngularSpectrum& s2, int first2,
                      int last2) {
  const int d1 = last1 - first1 + 1, d2 = last2 - first2 + 1;
  if (d1 != d2) return pi / 2;
  const int K = std::max(s1.K, s2.K);
  Eigen::MatrixXcd U(2 * K + 1, d1), V(2 * K + 1, d2);
  for (int i = 0; i < d1; ++i) U.col(i) = padded(s1, first1 + i, K);
  for (int i = 0; i < d2; ++i) V.col(i) = padded(s2, first2 + i, K);
  const Eigen::MatrixXcd R = V - U * (U.adjoint() * V);
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(R);
  return std::asin(std::min(1.0, svd.singularValues()(0)));
}

}  // namespace ahls::angular
