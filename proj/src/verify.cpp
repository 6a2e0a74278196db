// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>

#include "wrmt/kernels.hpp"
#include "wrmt/mc.hpp"
#include "wrmt/micro.hpp"
#include "wrmt/quadrature.hpp"
#include "wrmt/skewlinalg.hpp"
#include "wrmt/skewpoly.hpp"
#include "wrmt/twoflavour.hpp"

namespace wrmt {

namespace {

using Clock = std::chrono::steady_clock;

struct Worst {
  double value = 0.0;
  std::string where;
  bool seen = false;
  void update(double v, const std::string& w) {
    if (!seen || !(v <= value)) {  // NaN also lands here
      value = v;
      where = w;
      seen = true;
    }
  }
};

template <class... Args>
std::string fmt(const char* f, Args... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::string tag(const EnsembleParams& p, Branch b) {
  return fmt("%s n=%d nu=%d a=%g mu_r=%g mu_l=%g", branch_name(b), p.n, p.nu, p.a, p.mu_r, p.mu_l);
}

CheckResult upper(std::string name, const Worst& w, double tol, bool gating = true) {
  CheckResult c;
  c.name = std::move(name);
  c.value = w.value;
  c.tol = tol;
  c.passed = w.value <= tol;
  c.gating = gating;
  c.detail = w.where;
  return c;
}

CheckResult lower(std::string name, double value, double tol, std::string detail) {
  CheckResult c;
  c.name = std::move(name);
  c.value = value;
  c.tol = tol;
  c.at_least = true;
  c.passed = value >= tol;
  c.detail = std::move(detail);
  return c;
}

CheckResult flag(std::string name, bool ok, std::string detail) {
  CheckResult c = lower(std::move(name), ok ? 1.0 : 0.0, 1.0, std::move(detail));
  return c;
}

CriterionReport timed(int id, std::string title, double limit, const std::function<void(CriterionReport&)>& body) {
  CriterionReport r;
  r.id = id;
  r.title = std::move(title);
  r.time_limit = limit;
  const auto t0 = Clock::now();
  try {
    body(r);
  } catch (const std::exception& e) {
    r.checks.push_back(flag("no_exception", false, e.what()));
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return r;
}

std::vector<EnsembleParams> grid_params(bool quick) {
  std::vector<EnsembleParams> out;
  for (int n : {2, 3})
    for (int nu : {0, 1, 2})
      for (double a : {0.3, 0.5, 0.8})
        for (double mr : {0.0, 0.7})
          for (double ml : {0.0, -0.4}) {
            if (quick && (a != 0.5 || (mr != 0.0) != (ml != 0.0))) continue;
            out.push_back({n, nu, a, mr, ml});
          }
  return out;
}

std::vector<EnsembleParams> sample_params() {
  return {{2, 1, 0.5, 0.0, 0.0}, {3, 2, 0.8, 0.7, -0.4}, {2, 0, 0.3, 0.7, 0.0}, {3, 2, 0.5, 0.3, -0.2}};
}

constexpr Branch kBranches[] = {Branch::Minus, Branch::Plus};

// Bin average of f over [lo, hi] by 6-node Gauss-Legendre.
double bin_average(const std::function<double(double)>& f, double lo, double hi) {
  const Quadrature q = legendre_on(6, lo, hi);
  return q.integrate(f) / (hi - lo);
}

struct BinTally {
  int ok = 0, total = 0;
  double worst = 0.0;
  void add(double z) {
    ++total;
    if (std::abs(z) <= 3.0) ++ok;
    worst = std::max(worst, std::abs(z));
  }
  double fraction() const { return total ? double(ok) / total : 0.0; }
  std::string detail() const { return fmt("%d/%d bins within 3 s.e., worst |z| = %.2f", ok, total, worst); }
};

}  // namespace

bool CriterionReport::passed() const {
  if (time_limit > 0.0 && seconds > time_limit) return false;
  for (const CheckResult& c : checks)
    if (c.gating && !c.passed) return false;
  return !checks.empty();
}

CriterionReport verify_orthogonality(const VerifyOptions& o) {
  return timed(1, "orthogonality and skew-orthogonality", 120.0, [&](CriterionReport& r) {
    Worst p_orth, q_perp, skew;
    int sets = 0;
    for (const EnsembleParams& p : grid_params(o.quick)) {
      for (Branch b : kBranches) {
        ++sets;
        const WeightContext ctx(p, b);
        const SkewSystem s = build_skew_closed(p, b, p.n);
        const std::string t = tag(p, b);
        const int np = p.nu + 4;
        for (int i = 0; i < np; ++i)
          for (int j = 0; j <= i; ++j) {
            const double hi = s.ortho[i].h, hj = s.ortho[j].h;
            const double v = ctx.scalar_product(s.ortho[i].poly, s.ortho[j].poly);
            p_orth.update(std::abs(v - (i == j ? hi : 0.0)) / std::sqrt(hi * hj), t);
          }
        std::vector<Poly> qs;
        for (int l = 0; l <= p.n; ++l) {
          qs.push_back(s.q_even[l]);
          qs.push_back(s.q_odd[l]);
        }
        for (int j = 0; j < p.nu; ++j)
          for (const Poly& q : qs) {
            const double v = ctx.scalar_product(s.ortho[j].poly, q);
            const double nq = ctx.scalar_product(q, q);
            q_perp.update(std::abs(v) / std::sqrt(s.ortho[j].h * nq), t);
          }
        const auto m = ctx.antisym_matrix(qs);
        for (std::size_t i = 0; i < qs.size(); ++i)
          for (std::size_t j = 0; j < qs.size(); ++j) {
            double ref = 0.0;
            if (i / 2 == j / 2 && i != j) ref = i < j ? s.o[i / 2] : -s.o[i / 2];
            skew.update(std::abs(m[i][j] - ref) / std::sqrt(std::abs(s.o[i / 2] * s.o[j / 2])), t);
          }
      }
    }
    r.checks.push_back(upper("p_orthogonality_vs_h", p_orth, 1e-6));
    r.checks.push_back(upper("q_orthogonal_to_p_low", q_perp, 1e-6));
    r.checks.push_back(upper("q_skew_orthogonality_vs_o", skew, 1e-6));
    r.checks.push_back(lower("parameter_sets", sets, o.quick ? 1 : 144, "branches x grid points"));
  });
}

CriterionReport verify_three_routes(const VerifyOptions&) {
  return timed(2, "three-route polynomial agreement", 60.0, [&](CriterionReport& r) {
    Worst pf_even, pf_odd, pf_o, phase, rod;
    for (const EnsembleParams& p : sample_params()) {
      for (Branch b : kBranches) {
        const WeightContext ctx(p, b);
        const PfaffianRoute pr = build_skew_pfaffian(ctx, 3);
        const std::string t = tag(p, b);
        for (int l = 0; l <= 3; ++l) {
          const Poly qe = q_even_closed(p, b, l);
          const std::string tl = t + fmt(" l=%d", l);
          pf_even.update(coeff_rel_diff(pr.q_even[l], qe), tl);
          pf_odd.update(odd_diff_mod_even(pr.q_odd[l], q_odd_from_even(p, b, l, qe), qe), tl);
          pf_o.update(std::abs(pr.o[l] / o_closed(p, b, l) - 1.0), tl);
          rod.update(rodrigues_check(p, b, l), tl);
          for (cplx z : {cplx(0.37, 0.2), cplx(-0.8, 0.0), cplx(1.1, -0.4)}) {
            const PhaseIntegralResult ph = phase_integral_q(p, b, l, z);
            const cplx ref = qe(z);
            phase.update(ph.converged ? std::abs(ph.value - ref) / std::abs(ref) : INFINITY, tl);
          }
        }
      }
    }
    r.checks.push_back(upper("pfaffian_vs_closed_q_even", pf_even, 1e-6));
    r.checks.push_back(upper("pfaffian_vs_closed_q_odd_mod_even", pf_odd, 1e-6));
    r.checks.push_back(upper("pfaffian_ratio_vs_closed_o", pf_o, 1e-6));
    r.checks.push_back(upper("phase_integral_vs_closed", phase, 1e-6));
    r.checks.push_back(upper("rodrigues_vs_closed", rod, 1e-6));
  });
}

CriterionReport verify_limits(const VerifyOptions&) {
  return timed(3, "limit degenerations", 0.0, [&](CriterionReport& r) {
    Worst lag, gue, large;
    for (Branch b : kBranches) {
      for (const EnsembleParams& base : {EnsembleParams{2, 1, 1e-4, 0.3, 0.2}, EnsembleParams{3, 2, 1e-4, 0.0, 0.0}}) {
        const SkewSystem s = build_skew_closed(base, b, 2);
        for (int l = 0; l <= 2; ++l) {
          const std::string t = tag(base, b) + fmt(" l=%d", l);
          lag.update(coeff_rel_diff(s.q_even[l], laguerre_limit_even(base, b, l)), t + " even");
          lag.update(coeff_rel_diff(s.q_odd[l], laguerre_limit_odd(base, b, l)), t + " odd");
        }
      }
      // Product form in the scaled variable u = sqrt(n) z / a, sup-norm relative.
      for (const EnsembleParams& p : {EnsembleParams{2, 1, 100.0, 0.3, 0.2}, EnsembleParams{3, 0, 100.0, 0.0, 0.0}}) {
        if (b == Branch::Minus) continue;
        for (int l = 0; l <= 2; ++l) {
          const Poly q = q_even_closed(p, b, l), lim = large_a_limit(p, b, l);
          double num = 0.0, den = 0.0;
          for (int i = 0; i <= 24; ++i) {
            const double u = -3.0 + 6.0 * i / 24.0, z = u * p.a / std::sqrt(double(p.n));
            num = std::max(num, std::abs(q(z) - lim(z)));
            den = std::max(den, std::abs(lim(z)));
          }
          large.update(num / den, tag(p, b) + fmt(" l=%d", l));
        }
      }
    }
    for (const EnsembleParams& g : {EnsembleParams{3, 1, 1.0, 0.4, -0.4}, EnsembleParams{2, 0, 1.0, -0.3, 0.3}}) {
      const SkewSystem s = build_skew_closed(g, Branch::Minus, 3);
      for (int k = 0; k < 8; ++k) gue.update(coeff_rel_diff(s.q(k), gue_limit(g, g.nu + k)), tag(g, Branch::Minus) + fmt(" k=%d", k));
    }
    r.checks.push_back(upper("laguerre_limit_a_1e-4", lag, 1e-3));
    r.checks.push_back(upper("gue_limit_coefficients", gue, 1e-8));
    r.checks.push_back(upper("large_a_product_form_scaled", large, 1e-3));
  });
}

CriterionReport verify_christoffel_darboux(const VerifyOptions& o) {
  return timed(4, "Christoffel-Darboux and two-flavour identities", 0.0, [&](CriterionReport& r) {
    Worst cd, omega, u2;
    for (Branch b : kBranches) {
      for (const EnsembleParams& p : {EnsembleParams{2, 1, 0.5, 0.4, 0.1}, EnsembleParams{3, 0, 0.7, -0.2, 0.3}}) {
        const SkewSystem s = build_skew_closed(p, b, p.n + 2);
        for (int ne : {0, 1, 2, p.n}) {
          const CDKernel k{&s, ne};
          std::vector<cplx> a, c;
          double scale = 0.0;
          for (int i = 0; i < 10; ++i)
            for (int j = 0; j < 10; ++j) {
              const cplx z1(-1.5 + 0.3 * i, b == Branch::Plus ? 0.1 * (i % 3) : 0.0);
              const cplx z2(-1.4 + 0.3 * j, b == Branch::Plus ? -0.05 * (j % 4) : 0.0);
              a.push_back(sigma_sum(k, z1, z2));
              c.push_back(sigma_integral(k, z1, z2));
              scale = std::max(scale, std::abs(a.back()));
            }
          for (std::size_t i = 0; i < a.size(); ++i)
            cd.update(std::abs(a[i] - c[i]) / std::max(std::abs(a[i]), 1e-3 * scale), tag(p, b) + fmt(" n_eff=%d", ne));
        }
      }
      for (const EnsembleParams& p : {EnsembleParams{2, 1, 0.5, 0.0, 0.0}, EnsembleParams{2, 1, 0.5, 0.3, -0.2},
                                      EnsembleParams{1, 0, 0.6, 0.2, 0.1}, EnsembleParams{3, 2, 0.4, 0.1, 0.3}}) {
        const SkewSystem s = build_skew_closed(p, b, p.n + 1);
        const CDKernel k{&s, p.n};
        for (auto [z1, z2] : {std::pair<cplx, cplx>{0.3, -0.5}, {{0.1, 0.2}, {0.7, -0.1}}, {-1.2, 0.4}}) {
          const cplx sv = sigma_sum(k, z1, z2);
          omega.update(std::abs(sv - sigma_from_omega(p, b, z1, z2)) / std::abs(sv), tag(p, b));
        }
      }
      // Euler-angle U(2) oracle: Sigma / ((z1 - z2) Z2) must be z-independent.
      const MicroParams mp{0.5, 0.3, 0.2, 1};
      std::vector<cplx> ratios;
      for (auto [z1, z2] : sigma_probe_points(b)) {
        if (o.quick && ratios.size() >= 4) break;
        ratios.push_back(micro_sigma(mp, b, z1, z2) / ((z1 - z2) * micro_two_flavour(mp, b, z1, z2)));
      }
      for (const cplx& q : ratios) u2.update(std::abs(q / ratios.front() - 1.0), fmt("%s micro ratio", branch_name(b)));
    }
    r.checks.push_back(upper("sigma_sum_vs_sigma_integral_10x10", cd, 1e-6));
    r.checks.push_back(upper("two_flavour_identity_vs_omega_process", omega, 1e-6));
    r.checks.push_back(upper("two_flavour_u2_euler_ratio_constancy", u2, 1e-6));
  });
}

CriterionReport verify_recursions(const VerifyOptions&) {
  return timed(5, "recursion residuals", 0.0, [&](CriterionReport& r) {
    Worst odd, shift;
    for (const EnsembleParams& p : sample_params()) {
      for (Branch b : kBranches) {
        const WeightContext ctx(p, b);
        const SkewSystem s = build_skew_closed(p, b);
        for (int l = 0; l <= 2; ++l) {
          odd.update(verify_odd_recursion(ctx, s, l), tag(p, b) + fmt(" l=%d", l));
          shift.update(qp_shift_identity_residual(ctx, s, l), tag(p, b) + fmt(" l=%d", l));
        }
      }
    }
    r.checks.push_back(upper("odd_recursion_with_eps_l", odd, 1e-6));
    r.checks.push_back(upper("q_even_shift_identity", shift, 1e-6));
  });
}

CriterionReport verify_pfaffian_core(const VerifyOptions&) {
  return timed(6, "Pfaffian core", 0.0, [&](CriterionReport& r) {
    std::mt19937_64 rng(20260611);
    Worst sq, expand, schur;
    for (int t = 0; t < 200; ++t) {
      const int dim = 2 * (1 + t % 6);
      const RMatrix a = random_skew(dim, rng);
      const double pf = pfaffian(a), det = determinant(a);
      sq.update(std::abs(pf * pf - det) / std::max(std::abs(det), 1e-300), fmt("trial %d dim %d", t, dim));
      if (dim <= 8) expand.update(std::abs(pf - pfaffian_expand(a)) / std::max(std::abs(pf), 1e-300), fmt("trial %d", t));
    }
    std::uniform_int_distribution<int> half(1, 3);
    for (int t = 0; t < 50; ++t) {
      const int p = 2 * half(rng), q = 2 * half(rng);
      const SchurResult<double> s = pfaffian_schur(random_skew(p, rng), random_matrix(p, q, rng), random_skew(q, rng));
      schur.update(std::abs(s.direct - s.factored) / std::max(std::abs(s.direct), 1e-300), fmt("partition %d+%d", p, q));
    }
    r.checks.push_back(upper("pf_squared_equals_det_200", sq, 1e-10));
    r.checks.push_back(upper("parlett_reid_vs_expansion", expand, 1e-10));
    r.checks.push_back(upper("schur_identity_50", schur, 1e-10));
  });
}

CriterionReport verify_de_bruijn(const VerifyOptions&) {
  return timed(7, "de Bruijn theorems on discrete measures", 30.0, [&](CriterionReport& r) {
    std::mt19937_64 rng(424242);
    auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
    auto measure = [&](int m) {
      DiscreteMeasure dm;
      std::uniform_real_distribution<double> u(0.2, 1.5);
      for (int i = 0; i < m; ++i) dm.masses.push_back(u(rng));
      return dm;
    };
    Worst pf, det;
    const int trials = 60;
    for (int t = 0; t < trials; ++t) {
      const int m = pick(2, 5), n1 = pick(1, 3), n2 = n1 + pick(0, 2), n3 = (n1 + 1) / 2 + pick(0, 1);
      const DiscreteMeasure dm = measure(m);
      const PfaffianTheoremData f = random_pfaffian_data(m, n1, n2, n3, rng);
      pf.update(debruijn_pfaffian_check(dm, n1, n2, n3, f).residual, fmt("M=%d N1=%d N2=%d N3=%d", m, n1, n2, n3));
    }
    for (int t = 0; t < trials; ++t) {
      const int m = pick(2, 4), nr = pick(0, 2), nl = nr + pick(0, 1);
      const int n1 = nr + nl + pick(0, 2), n2 = nl + pick(0, 2);
      const DiscreteMeasure dm = measure(m);
      const DeterminantTheoremData f = random_determinant_data(m, n1, n2, nr, nl, rng);
      det.update(debruijn_determinant_check(dm, n1, n2, nr, nl, f).residual,
                 fmt("M=%d N1=%d N2=%d NR=%d NL=%d", m, n1, n2, nr, nl));
    }
    r.checks.push_back(upper("pfaffian_theorem", pf, 1e-10));
    r.checks.push_back(upper("determinant_theorem", det, 1e-10));
    r.checks.push_back(lower("trials_each", trials, 50, "randomized sizes and measures"));
  });
}

CriterionReport verify_normalization(const VerifyOptions& o) {
  return timed(8, "normalization identities (log form)", 0.0, [&](CriterionReport& r) {
    Worst fixed, printed;
    for (Branch b : kBranches)
      for (int n = 1; n <= 4; ++n)
        for (int nu = 0; nu <= 3; ++nu)
          for (double a : {0.3, 0.6})
            for (auto [mr, ml] : {std::pair{0.0, 0.0}, std::pair{0.4, -0.3}}) {
              if (o.quick && (a != 0.6 || n > 3)) continue;
              const EnsembleParams p{n, nu, a, mr, ml};
              const WeightContext ctx(p, b);
              const PfaffianRoute pr = build_skew_pfaffian(ctx, n - 1);
              std::vector<double> h;
              for (int j = 0; j < nu; ++j) {
                const Poly pj = p_poly(p, b, j);
                h.push_back(ctx.scalar_product(pj, pj));
              }
              const std::vector<double> ol(pr.o.begin(), pr.o.begin() + n);
              fixed.update(normalization_identity(p, b, h, ol).residual(), tag(p, b));
              printed.update(normalization_identity(p, b, h, ol, true).residual(), tag(p, b));
            }
    r.checks.push_back(upper("normalization_identity", fixed, 1e-8));
    r.checks.push_back(upper("normalization_identity_as_printed", printed, 1e-8, false));
  });
}

CriterionReport verify_monte_carlo(const VerifyOptions& o) {
  return timed(9, "Monte Carlo versus analytic densities", 600.0, [&](CriterionReport& r) {
    const EnsembleParams p{2, 1, 0.5, 0.0, 0.0};
    McSettings s;
    s.samples = o.quick ? std::min<long long>(o.mc_samples, 10000) : o.mc_samples;
    s.seed = o.mc_seed;
    const McResult mc = accumulate(p, s);
    const double n_s = double(mc.samples);

    const WeightContext cm(p, Branch::Minus);
    const KernelSet km(cm, 0);
    BinTally d5;
    for (int i = 0; i < mc.d5.bins(); ++i) {
      const double th = bin_average([&](double x) { return correlation_minus(km, {}, {x}); }, mc.d5.edge(i), mc.d5.edge(i + 1));
      if (th * n_s * mc.d5.width() < 10.0) continue;
      d5.add((mc.d5.density(i) - th) / mc.d5.std_error(i));
    }

    const WeightContext cp(p, Branch::Plus);
    const KernelSet kp(cp, 0);
    auto rho_r = [&](double x) { return correlation_plus(kp, {}, {SpectralPoint::real(x)}, {}).value.real(); };
    auto rho_l = [&](double x) { return correlation_plus(kp, {}, {}, {SpectralPoint::real(x)}).value.real(); };
    BinTally real, chi;
    for (int i = 0; i < mc.real.bins(); ++i) {
      const double lo = mc.real.edge(i), hi = mc.real.edge(i + 1);
      const double tr = bin_average(rho_r, lo, hi), tl = bin_average(rho_l, lo, hi);
      if ((tr + tl) * n_s * mc.real.width() < 10.0) continue;
      real.add((mc.real.density(i) - tr - tl) / mc.real.std_error(i));
      chi.add((mc.chirality.density(i) - (tl - tr)) / mc.chirality.std_error(i));
    }

    BinTally cx;
    const Histogram2D& h = mc.complex_pts;
    const double dx = (h.x_hi - h.x_lo) / h.nx, dy = (h.y_hi - h.y_lo) / h.ny;
    for (int i = 0; i < h.nx; ++i)
      for (int j = 0; j < h.ny; ++j) {
        const double x0 = h.x_lo + i * dx, y0 = h.y_lo + j * dy;
        const Quadrature qx = legendre_on(4, x0, x0 + dx), qy = legendre_on(4, y0, y0 + dy);
        double integral = 0.0;
        for (std::size_t a = 0; a < qx.size(); ++a)
          for (std::size_t c = 0; c < qy.size(); ++c) {
            const SpectralPoint z = SpectralPoint::complex({qx.nodes[a], qy.nodes[c]});
            // Each pair member is one eigenvalue; the pair density counts both.
            integral += qx.weights[a] * qy.weights[c] * 2.0 * correlation_plus(kp, {}, {z}, {}).value.real();
          }
        const double expected = integral * n_s;
        if (expected < 10.0) continue;
        cx.add((h.count(i, j) - expected) / std::sqrt(expected));
      }

    r.checks.push_back(lower("d5_density_bins_within_3se", d5.fraction(), 0.95, d5.detail()));
    r.checks.push_back(lower("dw_real_density_bins_within_3se", real.fraction(), 0.95, real.detail()));
    r.checks.push_back(lower("dw_complex_density_bins_within_3se", cx.fraction(), 0.95, cx.detail()));
    r.checks.push_back(lower("chirality_density_bins_within_3se", chi.fraction(), 0.95, chi.detail()));

    const double total = 2.0 * p.n + p.nu;
    Worst sr_m, sr_p;
    sr_m.update(std::abs(sum_rule_total(km, {}) - total), "minus");
    sr_p.update(std::abs(sum_rule_total(kp, {}) - total), "plus");
    r.checks.push_back(upper("sum_rule_d5_total_2n_plus_nu", sr_m, 1e-6));
    r.checks.push_back(upper("sum_rule_dw_total_2n_plus_nu", sr_p, 1e-6));

    // Integrated real-mode count and chirality against per-sample MC moments.
    const Quadrature line = composite_legendre(20, 24, -6.0, 6.0);
    const double real_th = line.integrate([&](double x) { return rho_r(x) + rho_l(x); });
    const double chi_th = line.integrate([&](double x) { return rho_l(x) - rho_r(x); });
    auto z_score = [&](double sum, double sq, double th) {
      const double mean = sum / n_s, var = std::max(sq / n_s - mean * mean, 0.0);
      const double se = std::sqrt(var / n_s);
      return std::pair{mean, se > 0.0 ? std::abs(mean - th) / se : (std::abs(mean - th) < 1e-9 ? 0.0 : INFINITY)};
    };
    const auto [real_mc, z_real] = z_score(mc.real_count_sum, mc.real_count_sq, real_th);
    const auto [chi_mc, z_chi] = z_score(mc.chirality_sum, mc.chirality_sq, double(p.nu));
    Worst wr, wc, wt;
    wr.update(z_real, fmt("MC %.5f vs analytic %.5f", real_mc, real_th));
    wc.update(z_chi, fmt("MC %.5f vs nu = %d", chi_mc, p.nu));
    wt.update(std::abs(chi_th - p.nu), fmt("analytic integral %.10f", chi_th));
    r.checks.push_back(upper("real_mode_count_z_score", wr, 3.0));
    r.checks.push_back(upper("chirality_integral_mc_z_score", wc, 3.0));
    r.checks.push_back(upper("chirality_integral_analytic_vs_nu", wt, 1e-6));
    r.checks.push_back(lower("samples", n_s, double(s.samples), fmt("seed %llu", (unsigned long long)s.seed)));
  });
}

CriterionReport verify_microscopic(const VerifyOptions& o) {
  return timed(10, "microscopic limit", 0.0, [&](CriterionReport& r) {
    Worst ser, anti;
    int points = 0;
    for (Branch b : kBranches)
      for (double z : {-3.0, -1.5, 0.0, 1.5, 3.0})
        for (double m6 : {-1.0, -0.5, 0.0, 0.5, 1.0})
          for (double ah : {0.25, 0.5, 1.0}) {
            const MicroParams mp{ah, m6, 0.2, 1};
            const cplx a = micro_q_integral(mp, b, z), s = micro_q_series(mp, b, z).value;
            ser.update(std::abs(a - s) / std::abs(a), fmt("%s z=%g m6=%g a_hat=%g", branch_name(b), z, m6, ah));
            ++points;
          }
    r.checks.push_back(upper("series_vs_integral_5x5x3", ser, 1e-8));
    r.checks.push_back(lower("series_grid_points", points, 150, "both branches"));

    const MicroParams mp{0.5, 0.3, 0.2, 1};
    for (Branch b : kBranches) {
      for (auto [z1, z2] : sigma_probe_points(b)) {
        const cplx s12 = micro_sigma(mp, b, z1, z2), s21 = micro_sigma(mp, b, z2, z1);
        anti.update(std::abs(s12 + s21) / std::abs(s12), branch_name(b));
        if (o.quick) break;
      }
      std::vector<double> es, eq;
      for (int n : {4, 8, 16}) {
        es.push_back(finite_n_sigma_error(mp, b, n));
        eq.push_back(finite_n_q_error(mp, b, n));
      }
      const bool dec_s = es[1] < es[0] && es[2] < es[1], dec_q = eq[1] < eq[0] && eq[2] < eq[1];
      r.checks.push_back(flag(fmt("%s_finite_n_sigma_error_decreasing", branch_name(b)), dec_s,
                              fmt("n=4,8,16: %.4g %.4g %.4g", es[0], es[1], es[2])));
      r.checks.push_back(flag(fmt("%s_finite_n_q_error_decreasing", branch_name(b)), dec_q,
                              fmt("n=4,8,16: %.4g %.4g %.4g", eq[0], eq[1], eq[2])));
    }
    r.checks.push_back(upper("micro_sigma_antisymmetry", anti, 1e-10));
  });
}

std::vector<CriterionReport> run_verification(const VerifyOptions& o) {
  return {verify_orthogonality(o),      verify_three_routes(o), verify_limits(o),
          verify_christoffel_darboux(o), verify_recursions(o),   verify_pfaffian_core(o),
          verify_de_bruijn(o),           verify_normalization(o), verify_monte_carlo(o),
          verify_microscopic(o)};
}

}  // namespace wrmt
