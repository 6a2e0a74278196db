// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <vector>

#include "wrmt/skewpoly.hpp"
#include "wrmt/weights.hpp"

namespace wrmt {

// Sigma_{n_eff}(z1, z2) = sum_{l <= n_eff} (1/o_l) [q_{nu+2l}(z1) q_{nu+2l+1}(z2) - (z1 <-> z2)].
struct CDKernel {
  const SkewSystem* sys = nullptr;
  int n_eff = 0;
};

cplx sigma_sum(const CDKernel& k, cplx z1, cplx z2);
// One-dimensional integral form built from q_{nu+2 n_eff} and q_{nu+2 n_eff+2}.
cplx sigma_integral(const CDKernel& k, cplx z1, cplx z2);

// Values needed by every kernel at one spectral point. Transforms follow the
// point's support: real points carry the delta(y)-weighted part, complex
// points the conjugate-pair part.
struct PointEval {
  SpectralPoint pt;
  bool is_mass = false;       // masses only enter through polynomials
  std::vector<cplx> q;        // q_{nu+k}(z), k < 2N
  std::vector<cplx> qt_l;     // left transform with projection (minus: the transform)
  std::vector<cplx> qt_r;     // right transform (plus)
  std::vector<cplx> p;        // p_j(z), j < nu
  std::vector<cplx> pg;       // p_j(x) g1(x) on real points, 0 otherwise
  std::vector<cplx> pt_l;     // int p_j(t) w(t, x) dt
  std::vector<cplx> pt_r;     // int p_j(t) w(x, t) dt
  std::vector<cplx> p_tilde;  // plus: transform of p_j with G2
};

class KernelSet {
 public:
  // Kernels with N = n + n_f polynomial pairs.
  KernelSet(const WeightContext& ctx, int n_f);

  const WeightContext& context() const { return ctx_; }
  const SkewSystem& system() const { return sys_; }
  Branch branch() const { return ctx_.branch(); }
  int n_pairs() const { return big_n_; }

  PointEval eval_point(const SpectralPoint& z) const;
  PointEval eval_mass(double m) const;

  // Minus branch: K1, K2, K3 at real points.
  double k1_minus(const PointEval& a, const PointEval& b) const;
  double k2_minus(const PointEval& a, const PointEval& b) const;
  double k3_minus(const PointEval& a, const PointEval& b) const;

  // Plus branch: K1..K6. Conjugate-pair contact terms of G2 between two
  // distinct complex points are not represented.
  cplx k_plus(int which, const PointEval& a, const PointEval& b) const;

  // Modified two-point weights at real points.
  double big_g2_minus(double x1, double x2) const;
  double big_g2_plus(double x1, double x2) const;

  // Transforms of single polynomials, for tests.
  double qtilde_minus(int k, double x) const;
  cplx qtilde_plus_left(int k, const SpectralPoint& z) const;
  cplx qtilde_plus_right(int k, const SpectralPoint& z) const;
  cplx ptilde(int j, const SpectralPoint& z) const;
  // Second form of the p transform: int p_j(t) G2(z, t) dt.
  cplx ptilde_other_order(int j, const SpectralPoint& z) const;

 private:
  const WeightContext& ctx_;
  SkewSystem sys_;
  int n_f_ = 0;
  int big_n_ = 0;
  std::vector<Poly> qs_;                    // q_{nu+k}, k < 2N
  std::vector<double> inv_o_;               // 1/o_l, l < N
  std::vector<double> h_;                   // h_j, j < nu
  std::vector<std::vector<double>> q_dot_p_;  // (q_{nu+k}, p_j)
  std::vector<std::vector<double>> p_dot_p_;  // (p_i, p_j)
};

// Correlation of k real points with 2 n_f' = masses.size() flavours (minus
// branch), including the (-1)^{k(k+1)/2} sign. Masses enter as -lambda.
double correlation_minus(const KernelSet& ks, const std::vector<double>& masses, const std::vector<double>& x);

// Coefficient of prod_{real points} delta(y_i) in the (k_r, k_l)-point
// correlation of the plus branch.
struct CorrelationValue {
  cplx value;
  int n_delta = 0;
};
CorrelationValue correlation_plus(const KernelSet& ks, const std::vector<double>& masses,
                                  const std::vector<SpectralPoint>& points_r,
                                  const std::vector<SpectralPoint>& points_l);

struct DensityProfile {
  std::vector<double> grid;
  std::vector<double> real_component;       // minus: rho_5; plus: rho_r
  std::vector<double> left_component;       // plus: rho_l
  std::vector<double> chirality_component;  // plus: rho_l - rho_r
  std::vector<double> y_grid;
  std::optional<std::vector<std::vector<double>>> complex_component;  // rho_c on grid x y_grid
  double normalization = 1.0;  // factor applied from the k = 1 sum rule
};

// Sum rule integral of the k = 1 correlation (total eigenvalue count).
double sum_rule_total(const KernelSet& ks, const std::vector<double>& masses);
// One-point densities on a grid, scaled so the sum rule equals 2n + nu.
DensityProfile density_profile(const KernelSet& ks, const std::vector<double>& masses,
                               const std::vector<double>& grid, const std::vector<double>& y_grid = {},
                               bool calibrate = true);

}  // namespace wrmt
