// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "wrmt/parallel.hpp"
#include "wrmt/quadrature.hpp"
#include "wrmt/skewlinalg.hpp"

namespace wrmt {

cplx sigma_sum(const CDKernel& k, cplx z1, cplx z2) {
  const SkewSystem& s = *k.sys;
  if (k.n_eff < 0 || k.n_eff > s.l_max()) throw std::out_of_range("sigma_sum: n_eff outside the system");
  cplx tot = 0.0;
  for (int l = 0; l <= k.n_eff; ++l)
    tot += (s.q_even[l](z1) * s.q_odd[l](z2) - s.q_odd[l](z1) * s.q_even[l](z2)) / s.o[l];
  return tot;
}

cplx sigma_integral(const CDKernel& k, cplx z1, cplx z2) {
  const SkewSystem& s = *k.sys;
  const int top = k.n_eff + 1;
  if (k.n_eff < 0 || top > s.l_max()) throw std::out_of_range("sigma_integral: n_eff outside the system");
  const EnsembleParams& p = s.params;
  const double alpha = p.n / (p.a * p.a);
  const cplx beta = p.mu_r + branch_sign(s.branch) * p.mu_l - alpha * (z1 + z2);
  // Gaussian peak plus room for the polynomial growth of degree 2(2 top + nu).
  const double deg = 2.0 * (2 * top + p.nu);
  const double peak = std::max(0.0, beta.real() / (2.0 * alpha));
  const double width = peak + std::sqrt((deg + 80.0) / alpha) + 1.0;
  const Quadrature q = composite_legendre(20, 10, 0.0, width);
  const Poly& lo = s.q_even[top - 1];
  const Poly& hi = s.q_even[top];
  cplx tot = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    const double t = q.nodes[i];
    const cplx w = std::exp(-alpha * t * t + beta * t);
    tot += q.weights[i] * w * (lo(z1 + t) * hi(z2 + t) - hi(z1 + t) * lo(z2 + t));
  }
  const double pref = alpha / s.o[top - 1];
  if (!std::isfinite(std::abs(tot))) throw std::runtime_error("sigma_integral: non-convergence");
  return pref * tot;
}

KernelSet::KernelSet(const WeightContext& ctx, int n_f) : ctx_(ctx), n_f_(n_f) {
  if (n_f < 0) throw ParamError("n_f must be non-negative");
  const EnsembleParams& p = ctx.params();
  big_n_ = p.n + n_f;
  sys_ = build_skew_closed(p, ctx.branch(), big_n_ + 1);
  if (!sys_.o_valid) throw ParamError("skew norms undefined for these parameters");
  for (int k = 0; k < 2 * big_n_; ++k) qs_.push_back(sys_.q(k));
  for (int l = 0; l < big_n_; ++l) inv_o_.push_back(1.0 / sys_.o[l]);
  const std::vector<Poly> pl = sys_.p_low();
  h_ = sys_.h_low();
  q_dot_p_ = ctx.antisym_matrix(qs_, pl);
  p_dot_p_ = ctx.antisym_matrix(pl, pl);
}

PointEval KernelSet::eval_point(const SpectralPoint& z) const {
  const int nu = ctx_.params().nu;
  PointEval e;
  e.pt = z;
  const cplx zz = z.z();
  for (const Poly& q : qs_) e.q.push_back(q(zz));
  for (int j = 0; j < nu; ++j) e.p.push_back(sys_.ortho[j].poly(zz));
  e.pg.assign(nu, 0.0);
  if (z.is_real()) {
    const double x = z.x;
    const double g1 = ctx_.g1(x);
    for (int j = 0; j < nu; ++j) e.pg[j] = e.p[j].real() * g1;
    std::vector<Poly> all = qs_;
    for (int j = 0; j < nu; ++j) all.push_back(sys_.ortho[j].poly);
    const std::vector<double> left = ctx_.transform(all, x, true);
    std::vector<double> right;
    if (ctx_.branch() == Branch::Plus) right = ctx_.transform(all, x, false);
    const int nq = static_cast<int>(qs_.size());
    for (int k = 0; k < nq; ++k) {
      double v = left[k];
      for (int j = 0; j < nu; ++j) v -= q_dot_p_[k][j] / h_[j] * e.pg[j].real();
      e.qt_l.push_back(v);
      if (!right.empty()) e.qt_r.push_back(right[k]);
    }
    for (int j = 0; j < nu; ++j) {
      e.pt_l.push_back(left[nq + j]);
      // g2 is antisymmetric on the minus branch.
      e.pt_r.push_back(right.empty() ? -left[nq + j] : right[nq + j]);
    }
    if (ctx_.branch() == Branch::Plus) {
      for (int j = 0; j < nu; ++j) {
        cplx v = e.pt_l[j];
        for (int i = 0; i < nu; ++i) v -= 0.5 * p_dot_p_[j][i] / h_[i] * e.pg[i];
        e.p_tilde.push_back(v);
      }
    }
  } else {
    if (ctx_.branch() == Branch::Minus) throw std::invalid_argument("minus branch kernels need real points");
    const cplx zb = std::conj(zz);
    const cplx gc = ctx_.g_c(zz);
    for (const Poly& q : qs_) {
      const cplx v = q(zb) * gc;
      e.qt_r.push_back(v);
      e.qt_l.push_back(-v);
    }
    for (int j = 0; j < nu; ++j) {
      const cplx v = sys_.ortho[j].poly(zb) * gc;
      e.pt_r.push_back(v);
      e.pt_l.push_back(-v);
      e.p_tilde.push_back(-v);
    }
  }
  return e;
}

PointEval KernelSet::eval_mass(double m) const {
  PointEval e;
  e.pt = SpectralPoint::real(m);
  e.is_mass = true;
  for (const Poly& q : qs_) e.q.push_back(q(cplx(m)));
  for (int j = 0; j < ctx_.params().nu; ++j) e.p.push_back(sys_.ortho[j].poly(m));
  e.pg.assign(ctx_.params().nu, 0.0);
  return e;
}

namespace {

// sum_l (1/o_l) [u_{2l+1} v_{2l} - u_{2l} v_{2l+1}]
cplx pair_sum(const std::vector<double>& inv_o, const std::vector<cplx>& u, const std::vector<cplx>& v) {
  cplx tot = 0.0;
  for (std::size_t l = 0; l < inv_o.size(); ++l)
    tot += inv_o[l] * (u[2 * l + 1] * v[2 * l] - u[2 * l] * v[2 * l + 1]);
  return tot;
}

void require_transforms(const PointEval& e) {
  if (e.is_mass) throw std::logic_error("kernel needs transforms at a mass argument");
}

}  // namespace

// G2 with the p_j (j < nu) projected out, at two real points.
double g2_minus_modified(const WeightContext& ctx, const std::vector<double>& h,
                         const std::vector<std::vector<double>>& pp, const PointEval& a, const PointEval& b) {
  double v = ctx.g2_minus(a.pt.x, b.pt.x);
  const int nu = static_cast<int>(h.size());
  for (int j = 0; j < nu; ++j) v -= (b.pt_l[j].real() * a.pg[j].real() + a.pt_r[j].real() * b.pg[j].real()) / h[j];
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nu; ++j) v += pp[i][j] / (h[i] * h[j]) * a.pg[i].real() * b.pg[j].real();
  return v;
}

// Plus-branch G2(z1, z2). Only the real-real part is kept.
cplx g2_plus_modified(const WeightContext& ctx, const std::vector<double>& h,
                      const std::vector<std::vector<double>>& pp, const PointEval& a, const PointEval& b) {
  if (!a.pt.is_real() || !b.pt.is_real()) return 0.0;
  cplx v = ctx.g_r(a.pt.x, b.pt.x);
  const int nu = static_cast<int>(h.size());
  for (int j = 0; j < nu; ++j) v -= (a.pt_r[j] - a.pt_l[j]) * b.pg[j] / h[j];
  for (int i = 0; i < nu; ++i)
    for (int j = 0; j < nu; ++j) v += pp[i][j] / (2.0 * h[i] * h[j]) * a.pg[i] * b.pg[j];
  return v;
}

double KernelSet::big_g2_minus(double x1, double x2) const {
  return g2_minus_modified(ctx_, h_, p_dot_p_, eval_point(SpectralPoint::real(x1)),
                           eval_point(SpectralPoint::real(x2)));
}

double KernelSet::big_g2_plus(double x1, double x2) const {
  return g2_plus_modified(ctx_, h_, p_dot_p_, eval_point(SpectralPoint::real(x1)),
                          eval_point(SpectralPoint::real(x2)))
      .real();
}

double KernelSet::k1_minus(const PointEval& a, const PointEval& b) const {
  require_transforms(a);
  require_transforms(b);
  return g2_minus_modified(ctx_, h_, p_dot_p_, a, b) + pair_sum(inv_o_, a.qt_l, b.qt_l).real();
}

double KernelSet::k2_minus(const PointEval& a, const PointEval& b) const {
  require_transforms(b);
  double v = 0.0;
  for (std::size_t j = 0; j < h_.size(); ++j) v += (a.p[j] * b.pg[j]).real() / h_[j];
  return v + pair_sum(inv_o_, a.q, b.qt_l).real();
}

double KernelSet::k3_minus(const PointEval& a, const PointEval& b) const { return pair_sum(inv_o_, a.q, b.q).real(); }

cplx KernelSet::k_plus(int which, const PointEval& a, const PointEval& b) const {
  const std::size_t nu = h_.size();
  switch (which) {
    case 1:
      require_transforms(a);
      require_transforms(b);
      return pair_sum(inv_o_, a.qt_r, b.qt_r);
    case 2: {
      require_transforms(a);
      require_transforms(b);
      cplx v = g2_plus_modified(ctx_, h_, p_dot_p_, b, a) + pair_sum(inv_o_, a.qt_l, b.qt_r);
      for (std::size_t j = 0; j < nu; ++j) v -= a.pg[j] * b.p_tilde[j] / h_[j];
      return v;
    }
    case 3:
      require_transforms(b);
      return pair_sum(inv_o_, a.q, b.qt_r);
    case 4: {
      require_transforms(a);
      require_transforms(b);
      cplx v = pair_sum(inv_o_, a.qt_l, b.qt_l);
      for (std::size_t j = 0; j < nu; ++j) v += (a.p_tilde[j] * b.pg[j] - b.p_tilde[j] * a.pg[j]) / h_[j];
      return v;
    }
    case 5: {
      require_transforms(b);
      cplx v = pair_sum(inv_o_, a.q, b.qt_l);
      for (std::size_t j = 0; j < nu; ++j) v += a.p[j] * b.pg[j] / h_[j];
      return v;
    }
    case 6:
      return pair_sum(inv_o_, a.q, b.q);
    default:
      throw std::invalid_argument("kernel index must be 1..6");
  }
}

double KernelSet::qtilde_minus(int k, double x) const { return eval_point(SpectralPoint::real(x)).qt_l.at(k).real(); }
cplx KernelSet::qtilde_plus_left(int k, const SpectralPoint& z) const { return eval_point(z).qt_l.at(k); }
cplx KernelSet::qtilde_plus_right(int k, const SpectralPoint& z) const { return eval_point(z).qt_r.at(k); }
cplx KernelSet::ptilde(int j, const SpectralPoint& z) const { return eval_point(z).p_tilde.at(j); }

cplx KernelSet::ptilde_other_order(int j, const SpectralPoint& z) const {
  // int p_j(t) G2(z, t): the g2 part, then the projection terms against
  // p_i(t) g1(t) integrated with <p_i|p_j> = h_j delta_ij.
  const PointEval e = eval_point(z);
  cplx v = e.pt_r.at(j) - (e.pt_r[j] - e.pt_l[j]);
  for (std::size_t i = 0; i < h_.size(); ++i) v += p_dot_p_[i][j] / (2.0 * h_[i]) * e.pg[i];
  return v;
}

double correlation_minus(const KernelSet& ks, const std::vector<double>& masses, const std::vector<double>& x) {
  if (ks.branch() != Branch::Minus) throw std::invalid_argument("correlation_minus needs the minus branch");
  if (masses.size() % 2) throw ParamError("odd flavour number is not supported");
  if (static_cast<int>(masses.size()) != 2 * (ks.n_pairs() - ks.context().params().n))
    throw ParamError("mass count does not match the kernel set");
  const int k = static_cast<int>(x.size()), m = static_cast<int>(masses.size());
  std::vector<PointEval> px, pm;
  for (double xi : x) px.push_back(ks.eval_point(SpectralPoint::real(xi)));
  for (double l : masses) pm.push_back(ks.eval_mass(-l));
  const int d = 2 * k + m;
  RMatrix a(d, d);
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      a(i, j) = ks.k1_minus(px[i], px[j]);
      a(i, k + j) = -ks.k2_minus(px[j], px[i]);
      a(k + i, j) = ks.k2_minus(px[i], px[j]);
      a(k + i, k + j) = ks.k3_minus(px[i], px[j]);
    }
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < m; ++j) {
      a(i, 2 * k + j) = -ks.k2_minus(pm[j], px[i]);
      a(2 * k + j, i) = -a(i, 2 * k + j);
      a(k + i, 2 * k + j) = ks.k3_minus(px[i], pm[j]);
      a(2 * k + j, k + i) = -a(k + i, 2 * k + j);
    }
  RMatrix den(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) den(i, j) = a(2 * k + i, 2 * k + j) = ks.k3_minus(pm[i], pm[j]);
  // Exact antisymmetry on the diagonal; the kernels vanish there analytically.
  for (int i = 0; i < d; ++i) a(i, i) = 0.0;
  const double sign = ((k * (k + 1) / 2) % 2) ? -1.0 : 1.0;
  const double pden = m ? pfaffian(den) : 1.0;
  if (pden == 0.0) throw std::domain_error("singular mass block (degenerate masses)");
  return sign * pfaffian(a) / pden;
}

CorrelationValue correlation_plus(const KernelSet& ks, const std::vector<double>& masses,
                                  const std::vector<SpectralPoint>& points_r,
                                  const std::vector<SpectralPoint>& points_l) {
  if (ks.branch() != Branch::Plus) throw std::invalid_argument("correlation_plus needs the plus branch");
  if (masses.size() % 2) throw ParamError("odd flavour number is not supported");
  if (static_cast<int>(masses.size()) != 2 * (ks.n_pairs() - ks.context().params().n))
    throw ParamError("mass count does not match the kernel set");
  const int kr = static_cast<int>(points_r.size()), kl = static_cast<int>(points_l.size());
  const int m = static_cast<int>(masses.size());
  std::vector<PointEval> pr, pl, pm;
  for (const auto& z : points_r) pr.push_back(ks.eval_point(z));
  for (const auto& z : points_l) pl.push_back(ks.eval_point(z));
  for (double v : masses) pm.push_back(ks.eval_mass(v));
  auto K = [&](int w, const PointEval& a, const PointEval& b) { return ks.k_plus(w, a, b); };

  const int r0 = 0, l0 = 2 * kr, m0 = 2 * kr + 2 * kl, d = m0 + m;
  CMatrix a(d, d);
  auto set = [&](int i, int j, cplx v) {
    if (i == j) return;
    a(i, j) = v;
    a(j, i) = -v;
  };
  for (int i = 0; i < kr; ++i) {
    for (int j = i; j < kr; ++j) {
      const int ri = r0 + 2 * i, rj = r0 + 2 * j;
      if (i != j) {
        set(ri, rj, K(1, pr[i], pr[j]));
        set(ri + 1, rj + 1, K(6, pr[i], pr[j]));
        set(ri + 1, rj, K(3, pr[i], pr[j]));
      }
      set(ri, rj + 1, -K(3, pr[j], pr[i]));
    }
    for (int j = 0; j < kl; ++j) {
      const int ri = r0 + 2 * i, lj = l0 + 2 * j;
      set(ri, lj, K(2, pl[j], pr[i]));
      set(ri, lj + 1, -K(3, pl[j], pr[i]));
      set(ri + 1, lj, -K(5, pr[i], pl[j]));
      set(ri + 1, lj + 1, K(6, pr[i], pl[j]));
    }
    for (int j = 0; j < m; ++j) {
      set(r0 + 2 * i, m0 + j, -K(3, pm[j], pr[i]));
      set(r0 + 2 * i + 1, m0 + j, K(6, pr[i], pm[j]));
    }
  }
  for (int i = 0; i < kl; ++i) {
    for (int j = i; j < kl; ++j) {
      const int li = l0 + 2 * i, lj = l0 + 2 * j;
      if (i != j) {
        set(li, lj, K(4, pl[i], pl[j]));
        set(li + 1, lj + 1, K(6, pl[i], pl[j]));
        set(li + 1, lj, -K(5, pl[i], pl[j]));
      }
      set(li, lj + 1, K(5, pl[j], pl[i]));
    }
    for (int j = 0; j < m; ++j) {
      set(l0 + 2 * i, m0 + j, K(5, pm[j], pl[i]));
      set(l0 + 2 * i + 1, m0 + j, K(6, pl[i], pm[j]));
    }
  }
  CMatrix den(m, m);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      set(m0 + i, m0 + j, K(6, pm[i], pm[j]));
      den(i, j) = a(m0 + i, m0 + j);
      den(j, i) = -den(i, j);
    }
  const cplx pden = m ? pfaffian(den) : cplx(1.0);
  if (pden == 0.0) throw std::domain_error("singular mass block (degenerate masses)");
  CorrelationValue out;
  out.value = d ? pfaffian(a) / pden : cplx(1.0);
  for (const auto& z : points_r) out.n_delta += z.is_real();
  for (const auto& z : points_l) out.n_delta += z.is_real();
  return out;
}

namespace {

struct Box {
  double x_lo, x_hi, y_hi;
};

// Region holding the spectrum to well below 1e-12 of the peak density.
Box spectral_box(const KernelSet& ks) {
  const EnsembleParams& p = ks.context().params();
  const double deg = 2.0 * (2 * ks.n_pairs() + p.nu);
  const double shift = p.a * p.a * (std::abs(p.mu_r) + std::abs(p.mu_l)) / p.n;
  const double sx = std::max(1.0, p.a) / std::sqrt(static_cast<double>(p.n));
  const double half = shift + (6.0 + std::sqrt(deg)) * sx;
  const double sy = 1.0 / std::sqrt(static_cast<double>(p.n));
  return {-half, half, (6.0 + std::sqrt(deg)) * sy};
}

// k = 1 correlations at a real point: minus returns {rho_5, 0}, plus {rho_r, rho_l}.
std::pair<double, double> real_densities(const KernelSet& ks, const std::vector<double>& masses, double x) {
  if (ks.branch() == Branch::Minus) return {correlation_minus(ks, masses, {x}), 0.0};
  const SpectralPoint pt = SpectralPoint::real(x);
  return {correlation_plus(ks, masses, {pt}, {}).value.real(), correlation_plus(ks, masses, {}, {pt}).value.real()};
}

// rho_c at y != 0 from the (1, 0) sector.
double complex_density(const KernelSet& ks, const std::vector<double>& masses, double x, double y) {
  return 2.0 * correlation_plus(ks, masses, {SpectralPoint::complex({x, y})}, {}).value.real();
}

}  // namespace

double sum_rule_total(const KernelSet& ks, const std::vector<double>& masses) {
  const Box box = spectral_box(ks);
  const int panels = std::max(8, static_cast<int>(std::ceil((box.x_hi - box.x_lo) / 0.25)));
  const Quadrature qx = composite_legendre(16, panels, box.x_lo, box.x_hi);
  std::vector<double> vals(qx.size());
  parallel_for(qx.size(), [&](std::size_t i) {
    const auto [r, l] = real_densities(ks, masses, qx.nodes[i]);
    vals[i] = r + l;
  });
  double tot = 0.0;
  for (std::size_t i = 0; i < qx.size(); ++i) tot += qx.weights[i] * vals[i];
  if (ks.branch() == Branch::Plus) {
    const Quadrature cx = composite_legendre(16, std::max(4, panels / 2), box.x_lo, box.x_hi);
    const Quadrature cy = composite_legendre(16, 4, 0.0, box.y_hi);
    std::vector<double> row(cx.size());
    parallel_for(cx.size(), [&](std::size_t i) {
      double acc = 0.0;
      for (std::size_t j = 0; j < cy.size(); ++j)
        acc += cy.weights[j] * complex_density(ks, masses, cx.nodes[i], cy.nodes[j]);
      row[i] = acc;
    });
    // rho_c over the whole plane, symmetric in y.
    for (std::size_t i = 0; i < cx.size(); ++i) tot += 2.0 * cx.weights[i] * row[i];
  }
  return tot;
}

DensityProfile density_profile(const KernelSet& ks, const std::vector<double>& masses,
                               const std::vector<double>& grid, const std::vector<double>& y_grid, bool calibrate) {
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw std::invalid_argument("density grid must be increasing");
  DensityProfile out;
  out.grid = grid;
  if (calibrate && !masses.empty()) {
    const EnsembleParams& p = ks.context().params();
    out.normalization = (2 * p.n + p.nu) / sum_rule_total(ks, masses);
  }
  const double c = out.normalization;
  out.real_component.resize(grid.size());
  if (ks.branch() == Branch::Plus) {
    out.left_component.resize(grid.size());
    out.chirality_component.resize(grid.size());
  }
  parallel_for(grid.size(), [&](std::size_t i) {
    const auto [r, l] = real_densities(ks, masses, grid[i]);
    out.real_component[i] = c * r;
    if (ks.branch() == Branch::Plus) {
      out.left_component[i] = c * l;
      out.chirality_component[i] = c * (l - r);
    }
  });
  if (ks.branch() == Branch::Plus && !y_grid.empty()) {
    out.y_grid = y_grid;
    std::vector<std::vector<double>> mesh(grid.size(), std::vector<double>(y_grid.size(), 0.0));
    parallel_for(grid.size(), [&](std::size_t i) {
      for (std::size_t j = 0; j < y_grid.size(); ++j)
        mesh[i][j] = y_grid[j] == 0.0 ? 0.0 : c * complex_density(ks, masses, grid[i], y_grid[j]);
    });
    out.complex_component = std::move(mesh);
  }
  return out;
}

}  // namespace wrmt
