// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/weights.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wrmt/special.hpp"

namespace wrmt {

namespace {

double sgn(double v) { return (v > 0.0) - (v < 0.0); }

// exp(e) * erfc(v) without overflow when e is large and v positive.
double exp_erfc(double e, double v) {
  if (v > 0.0) return std::exp(e - v * v) * erfcx(v);
  return std::exp(e) * std::erfc(v);
}

}  // namespace

WeightContext::WeightContext(const EnsembleParams& p, Branch b, const QuadSettings& qs)
    : p_(p), b_(b), qs_(qs) {
  p_.validate_for(b_);
  sc_ = derive_scales(p_);
  ah2_ = a_hat_sq(p_, b_);
  c_ = std::sqrt(8.0 * ah2_);
  build_tables();
}

double WeightContext::g1(double x) const {
  const double n = p_.n, a2 = p_.a * p_.a;
  return std::exp(-n * x * x / (2.0 * a2) + sg() * p_.mu_l * x);
}

double WeightContext::g2_minus(double x1, double x2) const {
  if (b_ != Branch::Minus) throw std::logic_error("g2_minus on the plus branch");
  const double n = p_.n, a2 = p_.a * p_.a;
  const double s = x1 + x2, d = x1 - x2;
  const double e = -n * s * s / (4.0 * a2) - n * d * d / 4.0 + (p_.mu_r - p_.mu_l) * s / 2.0;
  const double m6 = sc_.m6_minus;
  return std::exp(e) * erf2((-n * d - m6) / c_, (n * d - m6) / c_);
}

double WeightContext::g_r(double x1, double x2) const {
  const double n = p_.n, a2 = p_.a * p_.a;
  const double s = x1 + x2, d = x1 - x2;
  const double e = -n * s * s / (4.0 * a2) + n * d * d / 4.0 + (p_.mu_r + p_.mu_l) * s / 2.0;
  const double u = (n * d - l7()) / c_;
  const double sd = sgn(d);
  if (sd == 0.0) return -std::exp(e) * std::erf(u);
  // sgn(d) - erf(u) = sgn(d) erfc(sgn(d) u)
  return sd * exp_erfc(e, sd * u);
}

cplx WeightContext::g_c(cplx z) const {
  const double n = p_.n, a2 = p_.a * p_.a;
  const double x = z.real(), y = z.imag();
  const double g = std::exp(-n * x * x / a2 - n * y * y + (p_.mu_r + p_.mu_l) * x);
  return cplx(0.0, -2.0 * sgn(y) * g);
}

G2PlusValue WeightContext::g2_plus(const SpectralPoint& z1, const SpectralPoint& z2) const {
  G2PlusValue v;
  if (z1.is_real() && z2.is_real()) {
    v.real_real = true;
    v.g_r = g_r(z1.x, z2.x);
  } else if (!z1.is_real() && !z2.is_real() && z1.x == z2.x && z1.y == -z2.y) {
    v.conj_pair = true;
    v.g_c = g_c(z1.z());
  }
  return v;
}

void WeightContext::build_tables() {
  const double n = p_.n, a2 = p_.a * p_.a;
  scalar_q_ = shifted_hermite(qs_.n_scalar, n / (2.0 * a2), sg() * p_.mu_l);

  const double alpha = n / a2;
  const double beta = b_ == Branch::Minus ? p_.mu_r - p_.mu_l : p_.mu_r + p_.mu_l;
  const Quadrature qx = shifted_hermite(qs_.n_x, alpha, beta);

  // Delta direction, with everything but the X Gaussian folded into fd.
  std::vector<double> dn, dw;
  if (b_ == Branch::Minus) {
    const double w = std::sqrt(80.0 / n) + 3.0;
    const Quadrature qd = legendre_on(qs_.n_delta, -w, w);
    const double m6 = sc_.m6_minus;
    for (std::size_t k = 0; k < qd.size(); ++k) {
      const double d = qd.nodes[k];
      const double f = std::exp(-n * d * d) * erf2((-2.0 * n * d - m6) / c_, (2.0 * n * d - m6) / c_);
      dn.push_back(d);
      dw.push_back(qd.weights[k] * f);
    }
  } else {
    // g_r(x1,x2) - g_r(x2,x1) jumps at Delta = 0, so integrate each side.
    const double w = std::sqrt(80.0 * a2 / n) + 3.0;
    const Quadrature qd = legendre_on(qs_.n_delta / 2, 0.0, w);
    const double l7 = sc_.l7_plus;
    for (int side : {1, -1}) {
      for (std::size_t k = 0; k < qd.size(); ++k) {
        const double d = side * qd.nodes[k];
        const double d2 = 2.0 * d;
        const double ua = side * (n * d2 - l7) / c_;
        const double ub = side * (n * d2 + l7) / c_;
        const double e = n * d * d;
        const double f = side * (exp_erfc(e, ua) + exp_erfc(e, ub));
        dn.push_back(d);
        dw.push_back(qd.weights[k] * f);
      }
    }
  }
  // x1 = X + Delta, x2 = X - Delta, dx1 dx2 = 2 dX dDelta.
  for (std::size_t i = 0; i < qx.size(); ++i) {
    for (std::size_t k = 0; k < dn.size(); ++k) {
      rx1_.push_back(qx.nodes[i] + dn[k]);
      rx2_.push_back(qx.nodes[i] - dn[k]);
      rw_.push_back(2.0 * qx.weights[i] * dw[k]);
    }
  }

  if (b_ == Branch::Plus) {
    // int dx int_0^inf dy with y = sqrt(t/n); the factor 8 collects
    // -2i sign(y) from g_c, the two half planes and Im(f1 conj f2).
    const Quadrature& ql = cached_gauss_laguerre(qs_.n_lag);
    for (std::size_t i = 0; i < qx.size(); ++i) {
      for (std::size_t k = 0; k < ql.size(); ++k) {
        const double y = std::sqrt(ql.nodes[k] / n);
        cz_.emplace_back(qx.nodes[i], y);
        cw_.push_back(8.0 * qx.weights[i] * ql.weights[k] * 0.5 / (n * y));
      }
    }
  }
}

double WeightContext::scalar_product(const Poly& f1, const Poly& f2) const {
  const int cap = 2 * qs_.n_scalar - 1;
  if (f1.degree() + f2.degree() > cap)
    throw std::length_error("scalar_product: degree exceeds quadrature capacity");
  long double acc = 0.0L;
  for (std::size_t i = 0; i < scalar_q_.size(); ++i) {
    const double x = scalar_q_.nodes[i];
    acc += static_cast<long double>(scalar_q_.weights[i]) * f1(x) * f2(x);
  }
  return static_cast<double>(acc);
}

double WeightContext::antisym_product(const Poly& f1, const Poly& f2) const {
  return antisym_matrix({f1}, {f2})[0][0];
}

std::vector<std::vector<double>> WeightContext::antisym_matrix(const std::vector<Poly>& rows,
                                                               const std::vector<Poly>& cols) const {
  const std::size_t nr = rows.size(), nc = cols.size(), nq = rw_.size();
  std::vector<std::vector<double>> out(nr, std::vector<double>(nc, 0.0));
  // Real-real part: out = V1 diag(w) V2^T.
  std::vector<double> v1(nr * nq), v2(nc * nq);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t k = 0; k < nq; ++k) v1[i * nq + k] = rows[i](rx1_[k]) * rw_[k];
  for (std::size_t j = 0; j < nc; ++j)
    for (std::size_t k = 0; k < nq; ++k) v2[j * nq + k] = cols[j](rx2_[k]);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) {
      long double acc = 0.0L;
      const double* a = &v1[i * nq];
      const double* b = &v2[j * nq];
      for (std::size_t k = 0; k < nq; ++k) acc += static_cast<long double>(a[k]) * b[k];
      out[i][j] = static_cast<double>(acc);
    }
  if (b_ == Branch::Plus) {
    const std::size_t mq = cz_.size();
    std::vector<cplx> c1(nr * mq), c2(nc * mq);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t k = 0; k < mq; ++k) c1[i * mq + k] = rows[i](cz_[k]);
    for (std::size_t j = 0; j < nc; ++j)
      for (std::size_t k = 0; k < mq; ++k) c2[j * mq + k] = std::conj(cols[j](cz_[k]));
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) {
        long double acc = 0.0L;
        for (std::size_t k = 0; k < mq; ++k)
          acc += static_cast<long double>(cw_[k]) * (c1[i * mq + k] * c2[j * mq + k]).imag();
        out[i][j] += static_cast<double>(acc);
      }
  }
  return out;
}

double WeightContext::real_weight(double x1, double x2) const {
  return b_ == Branch::Minus ? g2_minus(x1, x2) : g_r(x1, x2);
}

std::vector<double> WeightContext::transform(const std::vector<Poly>& fs, double x,
                                             bool second_slot) const {
  const double n = p_.n, a2 = p_.a * p_.a;
  // Gaussian envelope of the integrand in t: exp(-alpha t^2 + beta t).
  double alpha, beta;
  if (b_ == Branch::Minus) {
    alpha = n / (4.0 * a2) + n / 4.0;
    beta = -n * x / (2.0 * a2) + n * x / 2.0 + (p_.mu_r - p_.mu_l) / 2.0;
  } else {
    alpha = n / (2.0 * a2);
    beta = (p_.mu_r + p_.mu_l) / 2.0;
  }
  int deg = 0;
  for (const Poly& f : fs) deg = std::max(deg, f.degree());
  const double sigma = 1.0 / std::sqrt(2.0 * alpha);
  const double centre = beta / (2.0 * alpha);
  const double reach = (12.0 + 2.0 * std::sqrt(static_cast<double>(deg))) * sigma;
  const double lo = std::min(centre, x) - reach, hi = std::max(centre, x) + reach;

  std::vector<long double> acc(fs.size(), 0.0L);
  constexpr int kNodes = 16;
  const double panel = 0.75 * sigma;
  auto run = [&](double from, double to) {
    if (to <= from) return;
    const int panels = std::max(1, static_cast<int>(std::ceil((to - from) / panel)));
    const Quadrature q = composite_legendre(kNodes, panels, from, to);
    for (std::size_t k = 0; k < q.size(); ++k) {
      const double t = q.nodes[k];
      const double w = q.weights[k] * (second_slot ? real_weight(t, x) : real_weight(x, t));
      if (w == 0.0) continue;
      for (std::size_t i = 0; i < fs.size(); ++i) acc[i] += static_cast<long double>(w) * fs[i](t);
    }
  };
  // Split at t = x, where the plus-branch weight jumps.
  run(lo, x);
  run(x, hi);
  return std::vector<double>(acc.begin(), acc.end());
}

double modified_product(const WeightContext& ctx, const std::vector<Poly>& p_low,
                        const std::vector<double>& h_low, const Poly& f1, const Poly& f2) {
  const std::size_t nu = p_low.size();
  double v = ctx.antisym_product(f1, f2);
  if (nu == 0) return v;
  std::vector<double> s1(nu), s2(nu), a1(nu), a2(nu);
  for (std::size_t j = 0; j < nu; ++j) {
    s1[j] = ctx.scalar_product(f1, p_low[j]);
    s2[j] = ctx.scalar_product(p_low[j], f2);
    a1[j] = ctx.antisym_product(p_low[j], f2);
    a2[j] = ctx.antisym_product(f1, p_low[j]);
  }
  const auto pp = ctx.antisym_matrix(p_low);
  for (std::size_t j = 0; j < nu; ++j) v -= (s1[j] * a1[j] + a2[j] * s2[j]) / h_low[j];
  for (std::size_t i = 0; i < nu; ++i)
    for (std::size_t j = 0; j < nu; ++j) v += s1[i] * pp[i][j] * s2[j] / (h_low[i] * h_low[j]);
  return v;
}

}  // namespace wrmt
