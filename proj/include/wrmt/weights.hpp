// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "wrmt/params.hpp"
#include "wrmt/poly.hpp"
#include "wrmt/quadrature.hpp"

namespace wrmt {

struct SpectralPoint {
  enum class Kind { RealMode, ComplexPairMember };
  double x = 0.0;
  double y = 0.0;
  Kind kind = Kind::RealMode;

  static SpectralPoint real(double x) { return {x, 0.0, Kind::RealMode}; }
  static SpectralPoint complex(cplx z) {
    return {z.real(), z.imag(), z.imag() == 0.0 ? Kind::RealMode : Kind::ComplexPairMember};
  }
  cplx z() const { return {x, y}; }
  bool is_real() const { return kind == Kind::RealMode; }
};

// Support-tagged value of the plus-branch two-point weight. The delta
// functions are structural: at most one component is populated.
struct G2PlusValue {
  bool real_real = false;  // both points real: g_r(x1, x2) d(y1) d(y2)
  bool conj_pair = false;  // z2 = conj(z1), y1 != 0: g_c(z1)
  double g_r = 0.0;
  cplx g_c = 0.0;
};

struct QuadSettings {
  int n_scalar = 100;  // Gauss-Hermite nodes for <f1|f2>
  int n_x = 60;        // Gauss-Hermite nodes in X = (x1+x2)/2
  int n_delta = 600;   // Gauss-Legendre nodes in Delta = (x1-x2)/2
  int n_lag = 60;      // Gauss-Laguerre nodes in t = n y^2 (plus branch)
};

class WeightContext {
 public:
  WeightContext(const EnsembleParams& p, Branch b, const QuadSettings& qs = {});

  const EnsembleParams& params() const { return p_; }
  const DerivedScales& scales() const { return sc_; }
  Branch branch() const { return b_; }
  int sg() const { return branch_sign(b_); }
  double a_hat2() const { return ah2_; }
  double m6() const { return sc_.m6(b_); }
  double l7() const { return sc_.l7(b_); }

  double g1(double x) const;
  double g2_minus(double x1, double x2) const;
  double g_r(double x1, double x2) const;
  cplx g_c(cplx z) const;
  G2PlusValue g2_plus(const SpectralPoint& z1, const SpectralPoint& z2) const;

  // <f1|f2> = int f1 f2 g1 over the real line.
  double scalar_product(const Poly& f1, const Poly& f2) const;
  // Minus: int int f1(x1) f2(x2) g2(x1,x2).
  // Plus: int int f1(x1) f2(x2) [g_r(x1,x2) - g_r(x2,x1)] plus the
  // conjugate-pair part int f1(z) f2(z*) g_c(z) d^2z.
  double antisym_product(const Poly& f1, const Poly& f2) const;
  // Matrix of antisym_product(rows[i], cols[j]) sharing one evaluation pass.
  std::vector<std::vector<double>> antisym_matrix(const std::vector<Poly>& rows,
                                                  const std::vector<Poly>& cols) const;
  std::vector<std::vector<double>> antisym_matrix(const std::vector<Poly>& fs) const {
    return antisym_matrix(fs, fs);
  }

  // One-dimensional transforms against the real two-point weight.
  // Minus: out[k] = int f_k(t) g2(t, x) dt (second_slot = true) or
  //        int f_k(t) g2(x, t) dt.
  // Plus:  same with g_r in place of g2.
  std::vector<double> transform(const std::vector<Poly>& fs, double x, bool second_slot) const;

 private:
  void build_tables();
  double real_weight(double x1, double x2) const;

  EnsembleParams p_;
  Branch b_;
  QuadSettings qs_;
  DerivedScales sc_;
  double ah2_ = 0.0;
  double c_ = 0.0;  // sqrt(8 a_hat^2), the erf width
  Quadrature scalar_q_;
  std::vector<double> rx1_, rx2_, rw_;  // real-real nodes
  std::vector<cplx> cz_;                // conjugate-pair nodes (y > 0)
  std::vector<double> cw_;
};

// (f1, f2) with the modified weight G2: the projection that removes p_j,
// j < nu, from either slot. p_low and h_low hold those p_j and h_j.
double modified_product(const WeightContext& ctx, const std::vector<Poly>& p_low,
                        const std::vector<double>& h_low, const Poly& f1, const Poly& f2);

}  // namespace wrmt
