// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "wrmt/kernels.hpp"
#include "wrmt/quadrature.hpp"
#include "wrmt/twoflavour.hpp"

using namespace wrmt;
using doctest::Approx;

namespace {
const EnsembleParams kQuenched{2, 1, 0.5, 0.0, 0.0};
}

TEST_CASE("Christoffel-Darboux sum equals the integral form") {
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    const EnsembleParams p{2, 1, 0.5, 0.4, 0.1};
    const SkewSystem s = build_skew_closed(p, b, 4);
    for (int ne : {0, 1, 2}) {
      const CDKernel k{&s, ne};
      for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
          const cplx z1(-1.2 + 0.6 * i, 0.1 * (i % 2)), z2(-1.1 + 0.55 * j, -0.07 * (j % 3));
          const cplx a = sigma_sum(k, z1, z2), c = sigma_integral(k, z1, z2);
          CHECK(std::abs(a - c) <= 1e-7 * std::max(std::abs(a), 1e-3));
        }
    }
  }
}

TEST_CASE("two-flavour identity through the Omega process") {
  for (Branch b : {Branch::Minus, Branch::Plus})
    for (const EnsembleParams& p : {kQuenched, EnsembleParams{2, 1, 0.5, 0.3, -0.2}, EnsembleParams{3, 2, 0.4, 0.1, 0.3}}) {
      const SkewSystem s = build_skew_closed(p, b, p.n + 1);
      const CDKernel k{&s, p.n};
      for (auto [z1, z2] : {std::pair<cplx, cplx>{0.3, -0.5}, {{0.1, 0.2}, {0.7, -0.1}}}) {
        const cplx sv = sigma_sum(k, z1, z2);
        CHECK(std::abs(sv - sigma_from_omega(p, b, z1, z2)) <= 1e-10 * std::abs(sv));
      }
    }
  // Frozen value at (2, 1, 0.5, 0.3, -0.2), minus branch.
  CHECK(sigma_from_omega({2, 1, 0.5, 0.3, -0.2}, Branch::Minus, 0.3, -0.5).real() ==
        Approx(1.9640182984688286).epsilon(1e-12));
}

TEST_CASE("U(2) Haar measure has unit mass") {
  const cplx one = u2_haar_integral([](const std::array<cplx, 4>&, cplx) { return cplx(1.0); }, 8, 8);
  CHECK(std::abs(one - 1.0) <= 1e-14);
  // E|u11|^2 = 1/2 and E[det] = 0 under Haar measure.
  const cplx m2 = u2_haar_integral([](const std::array<cplx, 4>& u, cplx) { return cplx(std::norm(u[0])); }, 8, 8);
  CHECK(std::abs(m2 - 0.5) <= 1e-14);
  const cplx md = u2_haar_integral([](const std::array<cplx, 4>&, cplx d) { return d; }, 8, 8);
  CHECK(std::abs(md) <= 1e-14);
}

TEST_CASE("minus-branch correlations: frozen values and structure") {
  const WeightContext ctx(kQuenched, Branch::Minus);
  const KernelSet ks(ctx, 0);
  CHECK(correlation_minus(ks, {}, {0.3}) == Approx(1.1230695508488326).epsilon(1e-9));
  CHECK(correlation_minus(ks, {}, {-1.1}) == Approx(1.0338599137412652).epsilon(1e-9));
  CHECK(correlation_minus(ks, {}, {0.3, -0.5}) == Approx(1.2698863120420227).epsilon(1e-9));
  CHECK(correlation_minus(ks, {}, {0.3, 0.3}) == Approx(0.0).scale(1.0).epsilon(1e-10));
  CHECK(correlation_minus(ks, {}, {0.3, -0.5}) == Approx(correlation_minus(ks, {}, {-0.5, 0.3})).epsilon(1e-10));
  const double r3 = correlation_minus(ks, {}, {0.1, -0.6, 0.8});
  CHECK(r3 == Approx(correlation_minus(ks, {}, {0.8, 0.1, -0.6})).epsilon(1e-9));
  CHECK(sum_rule_total(ks, {}) == Approx(5.0).epsilon(1e-9));
}

TEST_CASE("plus-branch correlations: frozen values and sum rules") {
  const WeightContext ctx(kQuenched, Branch::Plus);
  const KernelSet ks(ctx, 0);
  const double rr = correlation_plus(ks, {}, {SpectralPoint::real(0.3)}, {}).value.real();
  const double rl = correlation_plus(ks, {}, {}, {SpectralPoint::real(0.3)}).value.real();
  CHECK(rr == Approx(0.02869611232074528).epsilon(1e-9));
  CHECK(rl == Approx(0.71514719298578777).epsilon(1e-9));
  const CorrelationValue c = correlation_plus(ks, {}, {SpectralPoint::complex({0.2, 0.4})}, {});
  CHECK(c.value.real() == Approx(0.5101620241872119).epsilon(1e-9));
  CHECK(c.n_delta == 0);
  CHECK(correlation_plus(ks, {}, {SpectralPoint::real(0.3)}, {}).n_delta == 1);
  CHECK(sum_rule_total(ks, {}) == Approx(5.0).epsilon(1e-9));
  // Chirality density integrates to nu.
  const Quadrature q = composite_legendre(20, 24, -6.0, 6.0);
  const double chi = q.integrate([&](double x) {
    return correlation_plus(ks, {}, {}, {SpectralPoint::real(x)}).value.real() -
           correlation_plus(ks, {}, {SpectralPoint::real(x)}, {}).value.real();
  });
  CHECK(chi == Approx(1.0).epsilon(1e-9));
}

TEST_CASE("unquenched sum rules need no fitted constant") {
  for (Branch b : {Branch::Minus, Branch::Plus}) {
    const WeightContext ctx(kQuenched, b);
    const KernelSet ks(ctx, 1);
    CHECK(sum_rule_total(ks, {0.3, 0.7}) == Approx(5.0).epsilon(1e-8));
    if (b == Branch::Minus) CHECK_THROWS_AS(correlation_minus(ks, {0.3}, {0.1}), ParamError);
  }
}

TEST_CASE("alternative kernel forms") {
  const WeightContext ctx(kQuenched, Branch::Plus);
  const KernelSet ks(ctx, 0);
  for (double x : {0.3, -0.8})
    CHECK(ks.ptilde(0, SpectralPoint::real(x)).real() ==
          Approx(ks.ptilde_other_order(0, SpectralPoint::real(x)).real()).epsilon(1e-9));
  // K3 = -int Sigma(z1, t) g_r(x2, t) dt, split at the sign jump t = x2.
  const cplx z1(0.2, 0.1);
  const double x2 = 0.4;
  const cplx k3 = ks.k_plus(3, ks.eval_point(SpectralPoint::complex(z1)), ks.eval_point(SpectralPoint::real(x2)));
  const CDKernel cd{&ks.system(), 1};
  cplx acc = 0.0;
  for (const Quadrature& q : {composite_legendre(16, 40, -6.0, x2), composite_legendre(16, 40, x2, 6.0)})
    for (std::size_t i = 0; i < q.size(); ++i) acc -= q.weights[i] * sigma_sum(cd, z1, q.nodes[i]) * ctx.g_r(x2, q.nodes[i]);
  CHECK(std::abs(k3 - acc) <= 1e-9 * std::abs(k3));
}

TEST_CASE("density profile") {
  const WeightContext ctx(kQuenched, Branch::Plus);
  const KernelSet ks(ctx, 0);
  const DensityProfile d = density_profile(ks, {}, {-0.5, 0.3}, {0.2});
  REQUIRE(d.complex_component.has_value());
  CHECK(d.normalization == 1.0);
  CHECK(d.real_component[1] == Approx(0.02869611232074528).epsilon(1e-9));
  CHECK(d.chirality_component[1] == Approx(d.left_component[1] - d.real_component[1]));
  CHECK_THROWS(density_profile(ks, {}, {0.3, 0.1}));
}
