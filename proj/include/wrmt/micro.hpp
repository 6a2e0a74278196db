// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <vector>

#include "wrmt/params.hpp"
#include "wrmt/poly.hpp"

namespace wrmt {

// Microscopic scaling variables: a_hat = sqrt(n/2) a, z_hat = 2 n z, with
// m6 and l7 held fixed as n grows.
struct MicroParams {
  double a_hat = 0.5;
  double m6 = 0.0;
  double l7 = 0.0;
  int nu = 0;

  void validate() const;
};

class MicroError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Limit shape of q_{nu+2n}: the phase average
//   (2 pi)^-1 int exp[-a^2 (e^{2i phi} + e^{-2i phi}) + A e^{i phi} + B e^{-i phi}] e^{i nu phi}
// with A = (m6 + l7 - z)/2, B = (m6 - l7 -/+ z)/2. Periodic trapezoid,
// doubled until two levels agree to 1e-13 of the mean absolute integrand.
cplx micro_q_integral(const MicroParams& mp, Branch b, cplx z_hat);

struct MicroSeries {
  cplx value;
  int terms = 0;
  // Set when the printed root prefactor would need a branch choice. The
  // entire-function form used here never does, so this is diagnostic only.
  bool branch_ambiguous = false;
};
// Bessel expansion sum_j I_j(-2 a^2) T_{nu+2j}(A, B), where T_k is the
// entire function sum_m (AB)^m B^k / (m! (m+k)!) (A^|k| for k < 0).
MicroSeries micro_q_series(const MicroParams& mp, Branch b, cplx z_hat);

// Limit shape of the CD kernel: double phase average of the Vandermonde
// weight times the divided difference in cos (plus) or sin (minus).
cplx micro_sigma(const MicroParams& mp, Branch b, cplx z1_hat, cplx z2_hat);

// Microscopic two-flavour U(2) integral with masses z1, z2 entering the
// m6 slot (plus) or the l7 slot (minus). Haar measure of mass 1.
cplx micro_two_flavour(const MicroParams& mp, Branch b, cplx z1_hat, cplx z2_hat, int n_quad = 48);

// Finite-n ensemble with the given microscopic parameters.
EnsembleParams finite_n_params(const MicroParams& mp, Branch b, int n);

// Relative shape error ||v - c ref|| / ||v|| with c the least-squares fit.
double shape_error(const std::vector<cplx>& finite, const std::vector<cplx>& limit);

// Default probe points for the finite-n comparisons.
std::vector<std::pair<cplx, cplx>> sigma_probe_points(Branch b);
std::vector<cplx> q_probe_points();

// Shape error of Sigma_n(z1/2n, z2/2n) against micro_sigma on the probes.
double finite_n_sigma_error(const MicroParams& mp, Branch b, int n);
// Shape error of q_{nu+2n}(z/2n) against micro_q_integral on the probes.
double finite_n_q_error(const MicroParams& mp, Branch b, int n);

}  // namespace wrmt
