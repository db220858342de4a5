#include "ahls/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "ahls/parallel.hpp"
#include "ahls/specfun.hpp"

namespace ahls::analysis {

namespace {

constexpr double pi = std::numbers::pi;
constexpr cplx I1(0.0, 1.0);

struct ContourHit {};

Winding contour(const std::function<cplx(cplx)>& f, const Rect& r, double max_step) {
  Winding w;
  w.min_modulus = std::numeric_limits<double>::infinity();
  const double size = std::max(r.re_hi - r.re_lo, r.im_hi - r.im_lo);
  const double min_len = 1e-9 * size;
  double phase = 0.0;
  cplx moment = 0.0;
  auto eval = [&](cplx z) {
    const cplx v = f(z);
    ++w.evaluations;
    const double a = std::abs(v);
    if (!(a > 0.0) || !std::isfinite(a)) throw ContourHit{};
    w.min_modulus = std::min(w.min_modulus, a);
    w.max_modulus = std::max(w.max_modulus, a);
    return v;
  };
  std::function<void(cplx, cplx, cplx, cplx)> segment = [&](cplx za, cplx fa, cplx zb, cplx fb) {
    const cplx zm = 0.5 * (za + zb);
    const cplx fm = eval(zm);
    const cplx l1 = std::log(fm / fa), l2 = std::log(fb / fm);
    const double step = std::abs(l1.imag()) + std::abs(l2.imag());
    const bool consistent = std::abs(std::arg(fb / fa) - (l1.imag() + l2.imag())) < 1e-9;
    const bool smooth = std::abs(l1.real()) < 1.0 && std::abs(l2.real()) < 1.0;
    if (step <= max_step && consistent && smooth) {
      phase += l1.imag() + l2.imag();
      moment += 0.5 * (za + zm) * l1 + 0.5 * (zm + zb) * l2;
      return;
    }
    if (std::abs(zb - za) < min_len) throw ContourHit{};
    segment(za, fa, zm, fm);
    segment(zm, fm, zb, fb);
  };
  const cplx corners[5] = {{r.re_lo, r.im_lo}, {r.re_hi, r.im_lo}, {r.re_hi, r.im_hi}, {r.re_lo, r.im_hi},
                           {r.re_lo, r.im_lo}};
  const cplx f0 = eval(corners[0]);
  cplx fa = f0;
  for (int e = 0; e < 4; ++e) {
    constexpr int pieces = 4;
    for (int k = 0; k < pieces; ++k) {
      const cplx za = corners[e] + (corners[e + 1] - corners[e]) * (double(k) / pieces);
      const cplx zb = corners[e] + (corners[e + 1] - corners[e]) * (double(k + 1) / pieces);
      const cplx fb = (e == 3 && k == pieces - 1) ? f0 : eval(zb);
      segment(za, fa, zb, fb);
      fa = fb;
    }
  }
  w.raw = phase / (2.0 * pi);
  w.winding = static_cast<int>(std::lround(w.raw));
  w.first_moment = moment / (2.0 * pi * I1);
  if (std::abs(w.raw - w.winding) > 0.25) throw ContourHit{};
  return w;
}

cplx secant(const std::function<cplx(cplx)>& f, cplx z0, double h) {
  cplx z1 = z0 + h * cplx(1.0, 1.0);
  cplx f0 = f(z0), f1 = f(z1);
  for (int it = 0; it < 60; ++it) {
    if (f1 == 0.0) return z1;
    if (f1 == f0) break;
    const cplx z2 = z1 - f1 * (z1 - z0) / (f1 - f0);
    z0 = z1;
    f0 = f1;
    z1 = z2;
    f1 = f(z1);
    if (std::abs(z1 - z0) < 1e-14 * std::max(1.0, std::abs(z1))) break;
  }
  return std::abs(f1) <= std::abs(f0) ? z1 : z0;
}

// Zeros of f inside r, by recursive quartering while the winding exceeds 1.
std::vector<Pole> locate(const std::function<cplx(cplx)>& f, const Rect& r, const Winding& w, int depth) {
  std::vector<Pole> out;
  if (w.winding <= 0) return out;
  const double size = std::max(r.re_hi - r.re_lo, r.im_hi - r.im_lo);
  if (w.winding == 1 || depth > 8) {
    const cplx guess = w.first_moment / double(w.winding);
    cplx z = secant(f, guess, 1e-4 * size);
    if (!r.contains(z)) z = guess;
    Pole p;
    p.alpha = z;
    p.residual = std::abs(f(z)) / w.max_modulus;
    p.winding = w.winding;
    p.box = r;
    out.push_back(p);
    return out;
  }
  // quarter around a slightly off-centre point so split lines avoid symmetric zeros
  for (int attempt = 0; attempt < 6; ++attempt) {
    const double t = 0.5 + 0.0137 * attempt;
    const double xm = r.re_lo + t * (r.re_hi - r.re_lo), ym = r.im_lo + (1.0 - t) * (r.im_hi - r.im_lo);
    const Rect q[4] = {{r.re_lo, xm, r.im_lo, ym}, {xm, r.re_hi, r.im_lo, ym}, {r.re_lo, xm, ym, r.im_hi},
                       {xm, r.re_hi, ym, r.im_hi}};
    try {
      std::vector<Pole> found;
      int total = 0;
      for (const auto& b : q) {
        const auto wb = contour(f, b, 0.4);
        total += wb.winding;
        auto inner = locate(f, b, wb, depth + 1);
        found.insert(found.end(), inner.begin(), inner.end());
      }
      if (total != w.winding) continue;
      return found;
    } catch (const ContourHit&) {
    }
  }
  throw Error(Errc::non_convergence, "could not isolate the zeros in a box");
}

struct BoxResult {
  Rect box;
  Winding w;
  std::vector<Pole> zeros;
};

// Certify boxes stacked from height 0: [re_lo, re_hi] x [y_k, y_k + h]. Stops
// once `count` zeros are found (count > 0) or height `top` is reached.
std::vector<BoxResult> sweep(const std::function<cplx(cplx)>& f, double re_lo, double re_hi, double h, int count,
                             double top, int max_boxes) {
  std::vector<BoxResult> out;
  int found = 0;
  double y = 0.0;
  const int batch = std::max(1, thread_count());
  while (static_cast<int>(out.size()) < max_boxes) {
    if (count > 0 && found >= count) break;
    if (count <= 0 && y >= top - 1e-12 * h) break;
    const int n = count > 0 ? batch : std::min(batch, static_cast<int>(std::ceil((top - y) / h - 1e-9)));
    std::vector<BoxResult> res(n);
    std::vector<char> hit(n, 0);
    parallel_for(n, [&](int i) {
      const double lo = y + i * h;
      const double hi = count > 0 ? lo + h : std::min(lo + h, top);
      res[i].box = {re_lo, re_hi, lo, hi};
      try {
        res[i].w = contour(f, res[i].box, 0.4);
        res[i].zeros = locate(f, res[i].box, res[i].w, 0);
      } catch (const ContourHit&) {
        hit[i] = 1;
      }
    });
    for (int i = 0; i < n; ++i) {
      if (count > 0 && found >= count) break;
      if (hit[i]) {
        // nudge the top edge (and, later, the sides) until the contour is clear
        Rect b = res[i].box;
        bool ok = false;
        for (int attempt = 1; attempt <= 6 && !ok; ++attempt) {
          Rect t = b;
          t.im_hi = b.im_hi + 0.05 * h * attempt;
          if (count <= 0 && t.im_hi > top) t.im_hi = b.im_hi - 0.05 * h * attempt;
          if (attempt > 2) {
            const double widen = 0.02 * (attempt - 2) * (re_hi - re_lo);
            t.re_lo -= widen;
            t.re_hi += widen;
          }
          try {
            res[i].box = t;
            res[i].w = contour(f, t, 0.4);
            res[i].zeros = locate(f, t, res[i].w, 0);
            ok = true;
          } catch (const ContourHit&) {
          }
        }
        if (!ok) throw Error(Errc::non_convergence, "contour keeps hitting a zero");
        found += static_cast<int>(res[i].zeros.size());
        y = res[i].box.im_hi;
        out.push_back(std::move(res[i]));
        break;  // the following boxes of the batch start from the moved edge
      }
      found += static_cast<int>(res[i].zeros.size());
      y = res[i].box.im_hi;
      out.push_back(std::move(res[i]));
    }
  }
  return out;
}

int fit_offset(const std::vector<Pole>& z, double A) {
  // median of the per-zero estimates over the upper half of the list
  std::vector<double> est;
  int index = 0;
  for (size_t k = 0; k < z.size(); ++k) {
    if (k >= z.size() / 2) est.push_back(z[k].alpha.imag() * A / pi - index - 0.5);
    index += z[k].winding;
  }
  if (est.empty()) return 0;
  std::nth_element(est.begin(), est.begin() + est.size() / 2, est.end());
  return static_cast<int>(std::lround(est[est.size() / 2]));
}

cplx stable_cosh_ratio(cplx a, cplx b) {
  // cosh(a)/cosh(a - b)
  if (a.real() > 20.0) return (1.0 + std::exp(-2.0 * a)) / (std::exp(-b) + std::exp(b - 2.0 * a));
  return std::cosh(a) / std::cosh(a - b);
}

}  // namespace

Winding winding_number(const std::function<cplx(cplx)>& f, const Rect& r, double max_step) {
  try {
    return contour(f, r, max_step);
  } catch (const ContourHit&) {
    throw Error(Errc::non_convergence, "contour passes through a zero or the winding is not resolved");
  }
}

ReggePoleSet find_regge_poles(const radial::RadialProblem& rp, int count, double strip_height,
                              const PoleSearchOptions& opt) {
  if (count < 1) throw Error(Errc::domain_error, "pole count must be positive");
  const double l = rp.lambda(), A = rp.A();
  const double h = strip_height > 0.0 ? strip_height : pi / A;
  const double a = -l * pi / (2.0 * A), b = 5.0 * l * pi / (2.0 * A);
  const double re_lo = std::min(a, b), re_hi = std::max(a, b);
  const auto Df = [&](cplx mu) { return radial::characteristic(rp, mu, opt.tol); };
  const auto df = [&](cplx mu) { return radial::characteristic_small(rp, mu, opt.tol); };

  ReggePoleSet out;
  out.lambda = l;
  out.A = A;
  const int max_boxes = 4 * count + 20;
  const auto boxes = sweep(Df, re_lo, re_hi, h, count, 0.0, max_boxes);
  int total = 0;
  for (const auto& bx : boxes) {
    total += bx.w.winding;
    out.poles.insert(out.poles.end(), bx.zeros.begin(), bx.zeros.end());
  }
  if (static_cast<int>(out.poles.size()) < count) throw Error(Errc::pole_missed, "sweep ended before count poles");
  std::sort(out.poles.begin(), out.poles.end(), [](const Pole& x, const Pole& y) { return x.alpha.imag() < y.alpha.imag(); });
  out.swept_height = boxes.back().box.im_hi;
  out.p_alpha = fit_offset(out.poles, A);
  out.predicted = std::max(0, static_cast<int>(std::ceil(out.swept_height * A / pi - 0.5 - out.p_alpha)));
  if (total != out.predicted) {
    throw Error(Errc::pole_missed, "certified " + std::to_string(total) + " zeros below Im = " +
                                       std::to_string(out.swept_height) + ", ladder predicts " +
                                       std::to_string(out.predicted));
  }

  if (opt.small_zeros) {
    const double w = std::max(std::abs(l), 1.0) * pi / (2.0 * A);
    for (const auto& bx : sweep(df, -w, w, h, 0, out.swept_height, max_boxes)) {
      out.small_zeros.insert(out.small_zeros.end(), bx.zeros.begin(), bx.zeros.end());
    }
    std::sort(out.small_zeros.begin(), out.small_zeros.end(),
              [](const Pole& x, const Pole& y) { return x.alpha.imag() < y.alpha.imag(); });
    out.p_beta = fit_offset(out.small_zeros, A);
  }
  if (opt.off_ladder) {
    const double width = re_hi - re_lo;
    for (double side : {-1.0, 1.0}) {
      const double lo = side > 0 ? re_hi : re_lo - width;
      for (const auto& bx : sweep(Df, lo, lo + width, h, 0, out.swept_height, max_boxes)) {
        out.off_ladder.push_back(bx.box);
        out.off_ladder_winding.push_back(bx.w.winding);
      }
    }
  }
  return out;
}

AsymptoticModel model_of(const radial::RadialProblem& rp) { return {rp.lambda(), rp.A(), rp.C10(), rp.C11()}; }

cplx asymptotic_model_eval(const AsymptoticModel& am, cplx mu, ModelQuantity which, int sign) {
  if (mu == 0.0 || mu.real() < 0.0) throw Error(Errc::sector_error, "model needs Re μ ≥ 0, μ ≠ 0");
  if (sign < -1 || sign > 1) throw Error(Errc::domain_error, "sign must be -1, 0 or 1");
  const double arg = std::arg(mu);
  const int s = sign == 0 ? (arg >= 0.0 ? 1 : -1) : sign;
  if ((s == 1 && arg <= -pi / 2) || (s == -1 && arg >= pi / 2)) {
    throw Error(Errc::sector_error, "arg μ outside the sector of this sign");
  }
  const double l = am.lambda;
  const cplx g_minus = specfun::complex_gamma(cplx(1.0, -l)), g_plus = specfun::complex_gamma(cplx(1.0, l));
  const cplx two_2il = std::exp(cplx(0.0, 2.0 * l * std::log(2.0)));
  const cplx mu_2il = std::exp(cplx(0.0, 2.0 * l) * std::log(mu));
  const cplx z = mu * am.A;
  const double shift = s * l * pi;
  const cplx pre = am.C10 * am.C11 * g_minus * g_minus / (pi * two_2il) * mu_2il * std::exp(shift);
  switch (which) {
    case ModelQuantity::Delta:
      return pre * 2.0 * std::cosh(z - shift);
    case ModelQuantity::dDelta:
      return pre * am.A * 2.0 * std::sinh(z - shift);
    case ModelQuantity::delta_small:
      return am.C11 * g_minus * g_plus / (am.C10 * 2.0 * I1 * l * pi) * 2.0 * std::cosh(z);
    case ModelQuantity::M:
      return -g_plus * std::exp(-shift) * two_2il / (2.0 * I1 * l * am.C10 * am.C10 * g_minus) / mu_2il *
             stable_cosh_ratio(z, shift);
  }
  return 0.0;
}

cplx hadamard_reconstruct(const ReggePoleSet& poles, cplx G, cplx mu_sq, int truncation, bool tail) {
  if (truncation < 0 || truncation > static_cast<int>(poles.poles.size())) {
    throw Error(Errc::domain_error, "truncation exceeds the available poles");
  }
  cplx v = G;
  for (int n = 0; n < truncation; ++n) {
    const auto& p = poles.poles[n];
    v *= std::pow(1.0 - mu_sq / (p.alpha * p.alpha), p.winding);
  }
  if (tail) {
    // ∏_{n≥N} (1 + z²/(n+c)²) = Γ(N+c)² / (Γ(N+c+iz) Γ(N+c-iz)), z = μA/π
    const cplx c(0.5 + poles.p_alpha, -poles.lambda);
    const cplx z = std::sqrt(mu_sq) * poles.A / pi;
    const cplx n = double(truncation) + c;
    v *= std::exp(2.0 * specfun::log_gamma(n) - specfun::log_gamma(n + I1 * z) - specfun::log_gamma(n - I1 * z));
  }
  return v;
}

BoundsReport bounds_report(const radial::RadialProblem& rp, const std::vector<double>& real_grid,
                           const std::vector<double>& imag_grid) {
  BoundsReport r;
  r.real_grid = real_grid;
  r.imag_grid = imag_grid;
  const double l = std::abs(rp.lambda());
  r.imag_delta.resize(imag_grid.size());
  r.imag_delta_small.resize(imag_grid.size());
  parallel_for(static_cast<int>(imag_grid.size()), [&](int i) {
    const auto cf = radial::channel_functions(rp, cplx(0.0, imag_grid[i]));
    r.imag_delta[i] = std::abs(cf.Delta);
    r.imag_delta_small[i] = std::abs(cf.delta_small);
  });
  double sy = 0, sl = 0, syy = 0, syl = 0;
  for (size_t i = 0; i < imag_grid.size(); ++i) {
    r.imag_max_delta = std::max(r.imag_max_delta, r.imag_delta[i]);
    r.imag_max_delta_small = std::max(r.imag_max_delta_small, r.imag_delta_small[i]);
    const double y = imag_grid[i], lg = std::log(std::max(r.imag_delta[i], r.imag_delta_small[i]));
    sy += y;
    sl += lg;
    syy += y * y;
    syl += y * lg;
  }
  const double n = static_cast<double>(imag_grid.size());
  if (n >= 2) r.imag_growth = (n * syl - sy * sl) / (n * syy - sy * sy);

  r.real_delta.resize(real_grid.size());
  r.real_m.resize(real_grid.size());
  parallel_for(static_cast<int>(real_grid.size()), [&](int i) {
    const auto cf = radial::channel_functions(rp, real_grid[i]);
    r.real_delta[i] = std::abs(cf.Delta);
    r.real_m[i] = std::abs(cf.M);
  });
  r.mu_star = l * pi / rp.A();
  const double floor = 2.0 * l * std::abs(rp.C10()) * std::abs(rp.C11());
  const double bound = 1.0 / (2.0 * l * std::norm(rp.C10()));
  r.lower_margin = std::numeric_limits<double>::infinity();
  r.m_bound_margin = std::numeric_limits<double>::infinity();
  for (size_t i = 0; i < real_grid.size(); ++i) {
    r.lower_margin = std::min(r.lower_margin, r.real_delta[i] - floor);
    r.m_bound_margin = std::min(r.m_bound_margin, bound - r.real_m[i]);
    if (i == 0) continue;
    if (!(r.real_delta[i] > r.real_delta[i - 1])) {
      ++r.monotonicity_violations;
      r.last_decrease = real_grid[i];
      if (real_grid[i - 1] >= r.mu_star) ++r.tail_violations;
    }
  }
  return r;
}

}  // namespace ahls::analysis
