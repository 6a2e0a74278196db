// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/micro.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "wrmt/kernels.hpp"
#include "wrmt/skewpoly.hpp"
#include "wrmt/special.hpp"
#include "wrmt/twoflavour.hpp"

namespace wrmt {

namespace {

constexpr double kPi = std::numbers::pi;

void check_finite(cplx z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw ParamError(std::string(what) + " must be finite");
}

// Doubles the node count of a periodic rule until two levels agree relative
// to the mean absolute integrand. `rule(N)` returns {sum f, sum |f|} / N.
template <class Rule>
cplx refine_periodic(Rule&& rule, int n0, int n_max, double tol, const char* what) {
  auto [prev, prev_abs] = rule(n0);
  for (int n = 2 * n0; n <= n_max; n *= 2) {
    auto [cur, cur_abs] = rule(n);
    if (std::abs(cur - prev) <= tol * std::max(cur_abs, 1e-300)) return cur;
    prev = cur;
    prev_abs = cur_abs;
  }
  throw MicroError(std::string(what) + ": periodic quadrature did not converge");
}

// (e^x - 1) / x, finite at x = 0.
cplx phi1(cplx x) {
  if (std::abs(x) < 1e-8) return 1.0 + 0.5 * x;
  const double r = x.real(), i = x.imag();
  // expm1 on the complex argument: e^r (cos i + i sin i) - 1, with the
  // small-r part kept accurate.
  const double em1 = std::expm1(r);
  const double c = std::cos(i), s = std::sin(i);
  const cplx num(em1 * c - 2.0 * std::sin(0.5 * i) * std::sin(0.5 * i), (em1 + 1.0) * s);
  return num / x;
}

}  // namespace

void MicroParams::validate() const {
  if (!(a_hat >= 0.0) || !std::isfinite(a_hat)) throw ParamError("a_hat must be finite and >= 0");
  if (!std::isfinite(m6) || !std::isfinite(l7)) throw ParamError("m6 and l7 must be finite");
  if (nu < 0) throw ParamError("nu must be >= 0");
}

cplx micro_q_integral(const MicroParams& mp, Branch b, cplx z_hat) {
  mp.validate();
  check_finite(z_hat, "z_hat");
  const double sg = branch_sign(b), a2 = mp.a_hat * mp.a_hat;
  const cplx A = 0.5 * (mp.m6 + mp.l7 - z_hat);
  const cplx B = 0.5 * (mp.m6 - mp.l7 - sg * z_hat);
  auto rule = [&](int n) {
    cplx s = 0.0;
    double sa = 0.0;
    for (int k = 0; k < n; ++k) {
      const double ph = 2.0 * kPi * k / n;
      const cplx e = std::polar(1.0, ph);
      const cplx f = std::exp(-2.0 * a2 * std::cos(2.0 * ph) + A * e + B / e + cplx(0.0, mp.nu * ph));
      s += f;
      sa += std::abs(f);
    }
    return std::pair<cplx, double>{s / double(n), sa / n};
  };
  return refine_periodic(rule, 32, 1 << 16, 1e-13, "micro_q_integral");
}

MicroSeries micro_q_series(const MicroParams& mp, Branch b, cplx z_hat) {
  mp.validate();
  check_finite(z_hat, "z_hat");
  const double sg = branch_sign(b), a2 = mp.a_hat * mp.a_hat;
  const cplx A = 0.5 * (mp.m6 + mp.l7 - z_hat);
  const cplx B = 0.5 * (mp.m6 - mp.l7 - sg * z_hat);
  const cplx AB = A * B;

  auto t_k = [&](int k) {
    const int ak = std::abs(k);
    const cplx base = k >= 0 ? B : A;
    cplx term = std::pow(base, ak) / factorial(ak);
    cplx sum = term;
    for (int m = 1; m < 2000; ++m) {
      term *= AB / (double(m) * double(m + ak));
      sum += term;
      if (m > std::abs(AB) && std::abs(term) <= 1e-18 * std::abs(sum)) break;
    }
    return sum;
  };

  MicroSeries r;
  const double x = -2.0 * a2;
  r.value = bessel_i(0, x) * t_k(mp.nu);
  r.terms = 1;
  int quiet = 0;
  for (int j = 1; j < 500 && quiet < 3; ++j) {
    const double ij = bessel_i(j, x);  // I_{-j} = I_j
    const cplx add = ij * (t_k(mp.nu + 2 * j) + t_k(mp.nu - 2 * j));
    r.value += add;
    r.terms += 2;
    quiet = std::abs(add) <= 1e-14 * std::abs(r.value) ? quiet + 1 : 0;
  }
  if (quiet < 3) throw MicroError("micro_q_series: Bessel series did not converge");
  // The printed root prefactor (B/A)^{k/2} would need a branch when these
  // have opposite signs on the real axis.
  const cplx u = mp.m6 + mp.l7 - z_hat, v = mp.m6 - mp.l7 - sg * z_hat;
  r.branch_ambiguous = u.imag() == 0.0 && v.imag() == 0.0 && u.real() * v.real() < 0.0;
  return r;
}

cplx micro_sigma(const MicroParams& mp, Branch b, cplx z1, cplx z2) {
  mp.validate();
  check_finite(z1, "z1_hat");
  check_finite(z2, "z2_hat");
  if (z1 == z2) return 0.0;
  const bool plus = b == Branch::Plus;
  const double a2 = mp.a_hat * mp.a_hat;
  const cplx k = plus ? cplx(1.0) : cplx(0.0, 1.0);
  const cplx dz = k * (z1 - z2);
  // Per-angle exponent with the z-independent constants dropped:
  // plus -(2a cos + m6/4a)^2 - i l7 sin, minus (2a sin - i l7/4a)^2 - m6 cos.
  auto single = [&](double ph, double& c) {
    const double co = std::cos(ph), si = std::sin(ph);
    c = plus ? co : si;
    if (plus) return cplx(-4.0 * a2 * co * co - mp.m6 * co, mp.nu * ph - mp.l7 * si);
    return cplx(4.0 * a2 * si * si - mp.m6 * co, mp.nu * ph - mp.l7 * si);
  };
  auto rule = [&](int n) {
    std::vector<cplx> ex(n);
    std::vector<double> c(n);
    for (int i = 0; i < n; ++i) ex[i] = single(2.0 * kPi * (i + 0.5) / n, c[i]);
    cplx s = 0.0;
    double sa = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const double sv = std::sin(kPi * (i - j) / n);
        const cplx f = sv * sv * std::exp(ex[i] + ex[j] + k * (z2 * c[i] + z1 * c[j])) * dz *
                       phi1(dz * (c[i] - c[j]));
        s += f;
        sa += std::abs(f);
      }
    }
    const double nn = double(n) * n;
    return std::pair<cplx, double>{s / nn, sa / nn};
  };
  return refine_periodic(rule, 32, 2048, 1e-12, "micro_sigma");
}

cplx micro_two_flavour(const MicroParams& mp, Branch b, cplx z1, cplx z2, int n_quad) {
  mp.validate();
  const bool plus = b == Branch::Plus;
  const double a2 = mp.a_hat * mp.a_hat;
  // Masses shift the m6 slot (plus) or the l7 slot (minus) by -z.
  const cplx m1 = plus ? mp.m6 - z1 : cplx(mp.m6), m2 = plus ? mp.m6 - z2 : cplx(mp.m6);
  const cplx l1 = plus ? cplx(mp.l7) : mp.l7 - z1, l2 = plus ? cplx(mp.l7) : mp.l7 - z2;
  const int nu = mp.nu;
  auto f = [&](const std::array<cplx, 4>& u, cplx det) {
    const cplx i11 = u[3] / det, i22 = u[0] / det;
    const cplx off = u[1] * u[2] / (det * det);
    const cplx tr_u2 = u[0] * u[0] + 2.0 * u[1] * u[2] + u[3] * u[3];
    const cplx tr_i2 = i11 * i11 + 2.0 * off + i22 * i22;
    const cplx lin = 0.5 * (m1 * (u[0] + i11) + m2 * (u[3] + i22)) + 0.5 * (l1 * (u[0] - i11) + l2 * (u[3] - i22));
    return std::pow(det, nu) * std::exp(lin - a2 * (tr_u2 + tr_i2));
  };
  return u2_haar_integral(f, n_quad, n_quad);
}

EnsembleParams finite_n_params(const MicroParams& mp, Branch b, int n) {
  mp.validate();
  if (!(mp.a_hat > 0.0)) throw ParamError("finite-n mapping needs a_hat > 0");
  const double sg = branch_sign(b), ah2 = mp.a_hat * mp.a_hat;
  const double den = n - sg * 2.0 * ah2;
  if (!(den > 0.0)) throw ParamError("a_hat too large for this n on the plus branch (need n > 2 a_hat^2)");
  EnsembleParams p;
  p.n = n;
  p.nu = mp.nu;
  p.a = std::sqrt(2.0 * ah2 / den);
  const double sp = n * mp.m6 / (2.0 * ah2), sm = n * mp.l7 / (2.0 * ah2);
  p.mu_r = 0.5 * (sp + sm);
  p.mu_l = 0.5 * (sp - sm);
  p.validate_for(b);
  return p;
}

double shape_error(const std::vector<cplx>& v, const std::vector<cplx>& ref) {
  if (v.size() != ref.size() || v.empty()) throw std::invalid_argument("shape_error: size mismatch");
  cplx num = 0.0;
  double den = 0.0, vv = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    num += std::conj(ref[i]) * v[i];
    den += std::norm(ref[i]);
    vv += std::norm(v[i]);
  }
  const cplx c = num / den;
  double res = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) res += std::norm(v[i] - c * ref[i]);
  return std::sqrt(res / vv);
}

std::vector<std::pair<cplx, cplx>> sigma_probe_points(Branch b) {
  std::vector<std::pair<cplx, cplx>> pts;
  int k = 0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const double x1 = -2.0 + 4.0 * i / 3.0, x2 = -1.7 + 4.0 * j / 3.0;
      if (std::abs(x1 - x2) <= 0.1) continue;
      if (b == Branch::Plus)
        pts.emplace_back(cplx(x1, 0.3 * k), cplx(x2, -0.2));
      else
        pts.emplace_back(x1, x2);
      ++k;
    }
  }
  return pts;
}

std::vector<cplx> q_probe_points() {
  std::vector<cplx> z;
  for (int i = 0; i < 7; ++i) z.emplace_back(-3.0 + i);
  return z;
}

double finite_n_sigma_error(const MicroParams& mp, Branch b, int n) {
  const SkewSystem sys = build_skew_closed(finite_n_params(mp, b, n), b, n + 1);
  const CDKernel cd{&sys, n};
  std::vector<cplx> fin, lim;
  const double s = 1.0 / (2.0 * n);
  for (const auto& [z1, z2] : sigma_probe_points(b)) {
    fin.push_back(sigma_sum(cd, s * z1, s * z2));
    lim.push_back(micro_sigma(mp, b, z1, z2));
  }
  return shape_error(fin, lim);
}

double finite_n_q_error(const MicroParams& mp, Branch b, int n) {
  const EnsembleParams p = finite_n_params(mp, b, n);
  const Poly q = q_even_closed(p, b, n);
  std::vector<cplx> fin, lim;
  for (const cplx z : q_probe_points()) {
    fin.push_back(q(z / (2.0 * n)));
    lim.push_back(micro_q_integral(mp, b, z));
  }
  return shape_error(fin, lim);
}

}  // namespace wrmt
