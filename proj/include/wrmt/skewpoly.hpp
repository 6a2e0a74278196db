// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "wrmt/params.hpp"
#include "wrmt/poly.hpp"
#include "wrmt/weights.hpp"

namespace wrmt {

struct OrthoPoly {
  int l = 0;
  Poly poly;  // monic p_l
  double h = 0.0;
};

// Monic p_l = (a^2/n)^{l/2} He_l(sqrt(n)/a z -/+ a mu_l/sqrt(n)) and its norm.
Poly p_poly(const EnsembleParams& p, Branch b, int l);
double h_closed(const EnsembleParams& p, Branch b, int l);
std::vector<OrthoPoly> build_ortho(const EnsembleParams& p, Branch b, int count);
// Monic orthogonal polynomial from the Hankel moment determinant (oracle, l <= 6).
Poly ortho_moment_route(const WeightContext& ctx, int l);

// D~ f = f' - (n/a^2) z f + (mu_r +/- mu_l)/2 f.
Poly d_tilde(const EnsembleParams& p, Branch b, const Poly& f);
double eps_tilde(const EnsembleParams& p, Branch b, int l);

// Even skew-orthogonal polynomial q_{nu+2l} from the double Hermite sum.
Poly q_even_closed(const EnsembleParams& p, Branch b, int l);
// q_{nu+2l+1} = -(a^2/n)(D~ - eps~_l) q_{nu+2l}.
Poly q_odd_from_even(const EnsembleParams& p, Branch b, int l, const Poly& qe);
// Skew norm o_l. NaN on the minus branch when a >= 1.
double o_closed(const EnsembleParams& p, Branch b, int l);

struct SkewSystem {
  EnsembleParams params;
  Branch branch = Branch::Minus;
  std::vector<OrthoPoly> ortho;  // p_l for l = 0 .. nu + 2 l_max + 3
  std::vector<Poly> q_even, q_odd;
  std::vector<double> o, eps_tilde;
  bool o_valid = true;

  int l_max() const { return static_cast<int>(q_even.size()) - 1; }
  // k-th member of the skew family, q_{nu+k}.
  const Poly& q(int k) const { return k % 2 ? q_odd[k / 2] : q_even[k / 2]; }
  std::vector<Poly> p_low() const;
  std::vector<double> h_low() const;
};

SkewSystem build_skew_closed(const EnsembleParams& p, Branch b, int l_max);
inline SkewSystem build_skew_closed(const EnsembleParams& p, Branch b) {
  return build_skew_closed(p, b, p.n + 2);
}

struct PfaffianRoute {
  std::vector<Poly> q_even, q_odd;
  std::vector<double> o;  // Pf(M_{2l+2}) / Pf(M_{2l})
};
// Polynomials from Pfaffians of product moments (p_i|p_j), i,j >= nu.
PfaffianRoute build_skew_pfaffian(const WeightContext& ctx, int l_max);
// Coefficient distance between two odd polynomials after removing the best
// multiple of q_even (the Pfaffian ansatz leaves that admixture free).
double odd_diff_mod_even(const Poly& a, const Poly& b, const Poly& qe);

// Rodrigues-type finite derivative expansion of q_{nu+2l}(z).
cplx rodrigues_q(const EnsembleParams& p, Branch b, int l, cplx z);
// Max relative deviation from q_even_closed over 20 points.
double rodrigues_check(const EnsembleParams& p, Branch b, int l);

struct PhaseIntegralResult {
  cplx value;
  int nodes_per_dim = 0;
  bool converged = false;
};
// Double phase integral (coefficient extraction) for q_{nu+2l}(z).
PhaseIntegralResult phase_integral_q(const EnsembleParams& p, Branch b, int l, cplx z);

// epsilon_l from scalar products, and the residual of the odd recursion.
double eps_l(const WeightContext& ctx, const SkewSystem& sys, int l);
double verify_odd_recursion(const WeightContext& ctx, const SkewSystem& sys, int l);
// Residual of (q_{nu+2l} | p_{nu+2l+2}) = (l+1)(a^2/n)(mu_r -/+ mu_l) o_l, scaled by |o_l|.
double qp_shift_identity_residual(const WeightContext& ctx, const SkewSystem& sys, int l);

// Limits of the even/odd polynomials.
Poly laguerre_limit_even(const EnsembleParams& p, Branch b, int l);
Poly laguerre_limit_odd(const EnsembleParams& p, Branch b, int l);
// Minus branch at a = 1, mu_r = -mu_l = mu: q_k = n^{-k/2} He_k(sqrt(n) z - mu/sqrt(n)).
Poly gue_limit(const EnsembleParams& p, int k);
Poly large_a_limit(const EnsembleParams& p, Branch b, int l);

struct NormIdentity {
  int lhs_sign = 1, rhs_sign = 1;
  double lhs_log = 0.0, rhs_log = 0.0;
  // |log difference| + 1 if the signs differ.
  double residual() const;
};
// Products of h_j (j < nu) and o_j (j < n) against the c constants.
// `printed` selects the sign and exponent exactly as originally printed.
NormIdentity normalization_identity(const EnsembleParams& p, Branch b, const std::vector<double>& h_low,
                                    const std::vector<double>& o, bool printed = false);

}  // namespace wrmt
