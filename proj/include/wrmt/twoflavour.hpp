// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <functional>

#include "wrmt/params.hpp"
#include "wrmt/poly.hpp"

namespace wrmt {

// Two-flavour U(2) x U(2) integral at finite n, evaluated exactly by the
// Cayley Omega-process: det(d/dR)^n det(d/dL)^{n+nu} applied to exp(Q) at 0.
// Masses enter as z1, z2 on the diagonal of both flavour blocks.
cplx omega_two_flavour(const EnsembleParams& p, Branch b, cplx z1, cplx z2);

// Sigma_n(z1, z2) = -(z1 - z2) Omega / o_n (sum over l = 0..n).
cplx sigma_from_omega(const EnsembleParams& p, Branch b, cplx z1, cplx z2);

// Haar integral over U(2) with total mass 1. The integrand receives the
// matrix entries (u11, u12, u21, u22) and det U.
using U2Integrand = std::function<cplx(const std::array<cplx, 4>& u, cplx det)>;
cplx u2_haar_integral(const U2Integrand& f, int n_angle = 48, int n_theta = 48);

}  // namespace wrmt
