// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/skewpoly.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "wrmt/skewlinalg.hpp"
#include "wrmt/special.hpp"

namespace wrmt {

namespace {

constexpr double kPi = std::numbers::pi;

// He_k(alpha z + beta) as a polynomial in z.
Poly he_affine(int k, double alpha, double beta) { return he_poly(k).compose_affine(alpha, beta); }

double minus_or_plus(const EnsembleParams& p, Branch b) { return p.mu_r - branch_sign(b) * p.mu_l; }

// Coefficients of sum_k c_k p_k from the bordered-Pfaffian expansion
// Pf([[M, e_k], [-e_k^T, 0]]) / Pf(M without its last row and column).
Poly bordered_pfaffian_poly(const RMatrix& m, const std::vector<const Poly*>& basis) {
  const int d = m.rows();
  RMatrix md(d - 1, d - 1);
  for (int i = 0; i < d - 1; ++i)
    for (int j = 0; j < d - 1; ++j) md(i, j) = m(i, j);
  const double denom = pfaffian(md);
  Poly out;
  for (int k = 0; k < d; ++k) {
    RMatrix bm(d + 1, d + 1);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) bm(i, j) = m(i, j);
    bm(k, d) = 1.0;
    bm(d, k) = -1.0;
    out += *basis[k] * (pfaffian(bm) / denom);
  }
  return out;
}

RMatrix sub_matrix(const std::vector<std::vector<double>>& big, const std::vector<int>& idx) {
  const int d = static_cast<int>(idx.size());
  RMatrix m(d, d);
  for (int i = 0; i < d; ++i)
    for (int j = 0; j < d; ++j) m(i, j) = big[idx[i]][idx[j]];
  return m;
}

}  // namespace

Poly p_poly(const EnsembleParams& p, Branch b, int l) {
  const double a = p.a, rn = std::sqrt(static_cast<double>(p.n));
  return he_affine(l, rn / a, -branch_sign(b) * a / rn * p.mu_l) * std::pow(a * a / p.n, 0.5 * l);
}

double h_closed(const EnsembleParams& p, Branch /*b*/, int l) {
  const double a2n = p.a * p.a / p.n;
  return std::sqrt(2.0 * kPi) * std::pow(a2n, l + 0.5) * factorial(l) * std::exp(a2n * p.mu_l * p.mu_l / 2.0);
}

std::vector<OrthoPoly> build_ortho(const EnsembleParams& p, Branch b, int count) {
  std::vector<OrthoPoly> out;
  out.reserve(count);
  for (int l = 0; l < count; ++l) out.push_back({l, p_poly(p, b, l), h_closed(p, b, l)});
  return out;
}

Poly ortho_moment_route(const WeightContext& ctx, int l) {
  if (l == 0) return Poly::constant(1.0);
  std::vector<double> mom(2 * l + 1);
  for (int k = 0; k <= 2 * l; ++k) mom[k] = ctx.scalar_product(Poly::monomial(k), Poly::constant(1.0));
  RMatrix hank(l, l);
  for (int i = 0; i < l; ++i)
    for (int j = 0; j < l; ++j) hank(i, j) = mom[i + j];
  const double dl = determinant(hank);
  std::vector<double> c(l + 1, 0.0);
  // Expansion along the last row [1, z, ..., z^l] of the (l+1)x(l+1) determinant.
  for (int j = 0; j <= l; ++j) {
    RMatrix minor(l, l);
    for (int i = 0; i < l; ++i) {
      int cc = 0;
      for (int k = 0; k <= l; ++k) {
        if (k == j) continue;
        minor(i, cc++) = mom[i + k];
      }
    }
    c[j] = ((l + j) % 2 ? -1.0 : 1.0) * determinant(minor) / dl;
  }
  return Poly(c);
}

Poly d_tilde(const EnsembleParams& p, Branch b, const Poly& f) {
  const double na2 = p.n / (p.a * p.a);
  return f.derivative() - f.mul_x() * na2 + f * ((p.mu_r + branch_sign(b) * p.mu_l) / 2.0);
}

double eps_tilde(const EnsembleParams& p, Branch b, int l) { return (2 * l + 1) * minus_or_plus(p, b) / 2.0; }

Poly q_even_closed(const EnsembleParams& p, Branch b, int l) {
  const int sg = branch_sign(b), nu = p.nu;
  const double a = p.a, n = p.n, rn = std::sqrt(n);
  Poly out;
  for (int j = 0; j <= l; ++j) {
    const double c = std::exp(log_factorial(l) + log_factorial(l + nu) - log_factorial(j) - log_factorial(l - j) -
                              log_factorial(nu + j)) *
                     std::pow(a, 2 * j);
    out += he_affine(nu + j, sg * rn / a, -a / rn * p.mu_l) * he_affine(j, rn / a, -a / rn * p.mu_r) * c;
  }
  const double sign = ((l + nu) % 2 && sg < 0) ? -1.0 : 1.0;
  return out * (sign * std::pow(n * a * a, -0.5 * l) * std::pow(a * a / n, 0.5 * (l + nu)));
}

Poly q_odd_from_even(const EnsembleParams& p, Branch b, int l, const Poly& qe) {
  return (d_tilde(p, b, qe) - qe * eps_tilde(p, b, l)) * (-(p.a * p.a) / p.n);
}

double o_closed(const EnsembleParams& p, Branch b, int l) {
  const int sg = branch_sign(b);
  const double a = p.a, n = p.n, s = 1.0 + sg * a * a;
  if (s <= 0.0) return std::numeric_limits<double>::quiet_NaN();
  const double ah2 = n * a * a / (2.0 * s);
  const double d = minus_or_plus(p, b);
  const double sign = (sg < 0 && p.nu % 2) ? 4.0 : -4.0;
  const double lg = log_factorial(l) + log_factorial(l + p.nu) + 0.5 * std::log(kPi / (n * s)) +
                    (2 * l + p.nu + 1) * std::log(s / n) + std::log(a) +
                    a * a / (2.0 * n) * (p.mu_r * p.mu_r + p.mu_l * p.mu_l) - ah2 / (2.0 * n * n) * d * d;
  return sign * std::exp(lg);
}

std::vector<Poly> SkewSystem::p_low() const {
  std::vector<Poly> out;
  for (int j = 0; j < params.nu; ++j) out.push_back(ortho[j].poly);
  return out;
}

std::vector<double> SkewSystem::h_low() const {
  std::vector<double> out;
  for (int j = 0; j < params.nu; ++j) out.push_back(ortho[j].h);
  return out;
}

SkewSystem build_skew_closed(const EnsembleParams& p, Branch b, int l_max) {
  p.validate();
  SkewSystem s;
  s.params = p;
  s.branch = b;
  s.ortho = build_ortho(p, b, p.nu + 2 * l_max + 4);
  for (int l = 0; l <= l_max; ++l) {
    Poly qe = q_even_closed(p, b, l);
    s.q_odd.push_back(q_odd_from_even(p, b, l, qe));
    s.q_even.push_back(std::move(qe));
    s.o.push_back(o_closed(p, b, l));
    s.eps_tilde.push_back(eps_tilde(p, b, l));
  }
  s.o_valid = std::isfinite(s.o.front());
  return s;
}

PfaffianRoute build_skew_pfaffian(const WeightContext& ctx, int l_max) {
  const EnsembleParams& p = ctx.params();
  const Branch b = ctx.branch();
  const int nu = p.nu, top = nu + 2 * l_max + 2;
  std::vector<Poly> ps;
  for (int k = nu; k < top; ++k) ps.push_back(p_poly(p, b, k));
  const auto big = ctx.antisym_matrix(ps);  // big[i][j] = (p_{nu+i}, p_{nu+j})

  PfaffianRoute r;
  for (int l = 0; l <= l_max; ++l) {
    std::vector<int> idx_e, idx_o;
    for (int k = 0; k <= 2 * l; ++k) idx_e.push_back(k);
    for (int k = 0; k < 2 * l; ++k) idx_o.push_back(k);
    idx_o.push_back(2 * l + 1);
    std::vector<const Poly*> be, bo;
    for (int k : idx_e) be.push_back(&ps[k]);
    for (int k : idx_o) bo.push_back(&ps[k]);
    r.q_even.push_back(bordered_pfaffian_poly(sub_matrix(big, idx_e), be));
    r.q_odd.push_back(bordered_pfaffian_poly(sub_matrix(big, idx_o), bo));

    std::vector<int> idx_full, idx_prev;
    for (int k = 0; k < 2 * l + 2; ++k) idx_full.push_back(k);
    for (int k = 0; k < 2 * l; ++k) idx_prev.push_back(k);
    const double den = l == 0 ? 1.0 : pfaffian(sub_matrix(big, idx_prev));
    r.o.push_back(pfaffian(sub_matrix(big, idx_full)) / den);
  }
  return r;
}

double odd_diff_mod_even(const Poly& a, const Poly& b, const Poly& qe) {
  Poly d = a - b;
  const int k = qe.degree();
  const double alpha = qe[k] != 0.0 ? d[k] / qe[k] : 0.0;
  d -= qe * alpha;
  double dm = 0.0, am = 0.0;
  for (int j = 0; j <= d.degree(); ++j) dm = std::max(dm, std::abs(d[j]));
  for (int j = 0; j <= b.degree(); ++j) am = std::max(am, std::abs(b[j]));
  return dm / std::max(am, 1e-300);
}

cplx rodrigues_q(const EnsembleParams& p, Branch b, int l, cplx z) {
  const int sg = branch_sign(b), nu = p.nu, m = l + nu;
  const double a = p.a, n = p.n, c = a * a / (2.0 * n);
  const cplx w = p.mu_r - n * z / (a * a);
  const cplx al = double(sg) * std::sqrt(n) / a * z - a / std::sqrt(n) * p.mu_l;
  const double be = 1.0 / std::sqrt(n * a * a);
  // f_k(u) e^{-c u^2} = d^k/du^k e^{-c u^2}.
  std::vector<Poly> f{Poly::constant(1.0)};
  for (int k = 0; k < l; ++k) f.push_back(f.back().derivative() + f.back().mul_x() * (-2.0 * c));
  cplx tot = 0.0;
  for (int k = 0; k <= std::min(l, m); ++k) {
    const double coef = binomial(l, k) * std::pow(be, k) * std::exp(log_factorial(m) - log_factorial(m - k));
    tot += coef * f[l - k](w) * he_poly(m - k)(al);
  }
  const double sign = (m % 2 && sg < 0) ? -1.0 : 1.0;
  return sign * std::pow(a * a / n, 0.5 * m) * tot;
}

double rodrigues_check(const EnsembleParams& p, Branch b, int l) {
  const Poly qe = q_even_closed(p, b, l);
  double worst = 0.0;
  for (int i = 0; i < 20; ++i) {
    const cplx z(-1.5 + 3.0 * i / 19.0, i % 3 == 0 ? 0.0 : 0.1 * (i % 5));
    const cplx ref = qe(z);
    worst = std::max(worst, std::abs(rodrigues_q(p, b, l, z) - ref) / std::max(std::abs(ref), 1e-12));
  }
  return worst;
}

PhaseIntegralResult phase_integral_q(const EnsembleParams& p, Branch b, int l, cplx z) {
  const int sg = branch_sign(b), nu = p.nu;
  const double a = p.a, n = p.n, c = a * a / (2.0 * n);
  const cplx ar = a * a * p.mu_r / n - z;
  const cplx al = a * a * p.mu_l / n - double(sg) * z;
  const double pref = ((l + nu) % 2 && sg < 0 ? -1.0 : 1.0) * factorial(l) * factorial(l + nu);
  auto eval = [&](int nn, double& scale) {
    cplx sum = 0.0;
    scale = 0.0;
    for (int i = 0; i < nn; ++i) {
      const cplx u = std::polar(1.0, 2.0 * kPi * i / nn);
      for (int j = 0; j < nn; ++j) {
        const cplx v = std::polar(1.0, 2.0 * kPi * j / nn);
        const cplx e = std::exp(-c * (u * u + v * v) + u * v / n - ar * u - al * v);
        scale = std::max(scale, std::abs(e));
        sum += e * std::pow(u, -l) * std::pow(v, -(l + nu));
      }
    }
    return pref * sum / double(nn * nn);
  };
  PhaseIntegralResult r;
  double scale = 0.0;
  cplx prev = eval(32, scale);
  r.nodes_per_dim = 32;
  for (int nn = 64; nn <= 128; nn *= 2) {
    const cplx cur = eval(nn, scale);
    r.nodes_per_dim = nn;
    const double diff = std::abs(cur - prev);
    prev = cur;
    if (diff <= 1e-9 * std::abs(cur) || diff <= 1e-14 * pref * scale) {
      r.converged = true;
      break;
    }
  }
  r.value = prev;
  return r;
}

double eps_l(const WeightContext& ctx, const SkewSystem& sys, int l) {
  const EnsembleParams& p = sys.params;
  const int nu = p.nu;
  auto proj = [&](const Poly& q, int k) {
    if (k < 0) return 0.0;
    const Poly pk = p_poly(p, sys.branch, k);
    return ctx.scalar_product(q, pk) / h_closed(p, sys.branch, k);
  };
  const double d = minus_or_plus(p, sys.branch);
  return p.n / (p.a * p.a) * (proj(sys.q_odd[l + 1], nu + 2 * l + 1) - proj(sys.q_odd[l], nu + 2 * l - 1)) +
         (l + 1) * (l + 1) * d * d * p.a * p.a / p.n;
}

double verify_odd_recursion(const WeightContext& ctx, const SkewSystem& sys, int l) {
  const EnsembleParams& p = sys.params;
  const double na2 = p.n / (p.a * p.a);
  const Poly lhs = d_tilde(p, sys.branch, sys.q_odd[l]);
  Poly rhs = sys.q_even[l + 1] * (-na2) - sys.q_odd[l] * sys.eps_tilde[l] + sys.q_even[l] * eps_l(ctx, sys, l);
  if (l > 0) rhs -= sys.q_even[l - 1] * (na2 * sys.o[l] / sys.o[l - 1]);
  return coeff_rel_diff(lhs, rhs);
}

double qp_shift_identity_residual(const WeightContext& ctx, const SkewSystem& sys, int l) {
  const EnsembleParams& p = sys.params;
  const Poly pk = p_poly(p, sys.branch, p.nu + 2 * l + 2);
  const double lhs = ctx.antisym_product(sys.q_even[l], pk);
  const double rhs = (l + 1) * p.a * p.a / p.n * minus_or_plus(p, sys.branch) * sys.o[l];
  return std::abs(lhs - rhs) / std::abs(sys.o[l]);
}

Poly laguerre_limit_even(const EnsembleParams& p, Branch b, int l) {
  const int sg = branch_sign(b), nu = p.nu;
  const double n = p.n;
  // L_l^nu(x) = sum_i (-1)^i C(l+nu, l-i) x^i / i!, with x = -sg n z^2.
  std::vector<double> c(nu + 2 * l + 1, 0.0);
  const double pre = factorial(l) * std::pow(sg / n, l);
  for (int i = 0; i <= l; ++i) {
    const double xi = std::pow(-sg * n, i);
    c[nu + 2 * i] = pre * ((i % 2) ? -1.0 : 1.0) * binomial(l + nu, l - i) * xi / factorial(i);
  }
  return Poly(c);
}

Poly laguerre_limit_odd(const EnsembleParams& p, Branch b, int l) { return laguerre_limit_even(p, b, l).mul_x(); }

Poly gue_limit(const EnsembleParams& p, int k) {
  const double rn = std::sqrt(static_cast<double>(p.n));
  return he_affine(k, rn, -p.mu_r / rn) * std::pow(p.n, -0.5 * k);
}

Poly large_a_limit(const EnsembleParams& p, Branch b, int l) {
  const double a = p.a, rn = std::sqrt(static_cast<double>(p.n));
  const Poly h1 = he_affine(p.nu + l, rn / a, -branch_sign(b) * a / rn * p.mu_l);
  const Poly h2 = he_affine(l, rn / a, -a / rn * p.mu_r);
  return h1 * h2 * std::pow(a * a / p.n, 0.5 * (2 * l + p.nu));
}

double NormIdentity::residual() const {
  return std::abs(lhs_log - rhs_log) + (lhs_sign == rhs_sign ? 0.0 : 1.0);
}

NormIdentity normalization_identity(const EnsembleParams& p, Branch b, const std::vector<double>& h_low,
                                    const std::vector<double>& o, bool printed) {
  const int n = p.n, nu = p.nu;
  const double a = p.a, nd = n;
  const DerivedScales sc = derive_scales(p);
  const double ah2 = a_hat_sq(p, b);
  auto common = [&](double sg) {
    return nd * (n + nu - 0.5) * std::log(1.0 + sg * a * a) + (n + nu * nu) * std::log(a) +
           a * a / 2.0 * (p.mu_r * p.mu_r + (n + nu) * p.mu_l * p.mu_l / nd);
  };
  NormIdentity r;
  double lhs = 0.0;
  int sign = 1;
  for (double h : h_low) {
    lhs += std::log(std::abs(h));
    if (h < 0) sign = -sign;
  }
  for (int l = 0; l < n; ++l) {
    lhs += std::log(std::abs(o.at(l)));
    if (o[l] < 0) sign = -sign;
  }
  if (b == Branch::Minus) {
    lhs += log_factorial(2 * n + nu);
    const int pre = printed ? n : n * (nu + 1);
    r.lhs_sign = (pre % 2 ? -1 : 1) * sign;
    r.lhs_log = lhs;
    const double m6 = sc.m6_minus;
    const double ex = printed ? -m6 * m6 / 4.0 : -nd * m6 * m6 / (8.0 * ah2);
    r.rhs_log = -sc.c_minus.log_abs + common(-1.0) + ex;
    r.rhs_sign = sc.c_minus.sign;
  } else {
    lhs += log_factorial(n) + log_factorial(n + nu);
    const int pre = nu * (nu - 1) / 2 + n * (n + 1) / 2;
    r.lhs_sign = (pre % 2 ? -1 : 1) * sign;
    r.lhs_log = lhs;
    const double l7 = sc.l7_plus;
    const double ex = printed ? -l7 * l7 / 4.0 : -nd * l7 * l7 / (8.0 * ah2);
    r.rhs_log = -sc.c_plus.log_abs + common(1.0) + ex;
    r.rhs_sign = sc.c_plus.sign;
  }
  return r;
}

}  // namespace wrmt
