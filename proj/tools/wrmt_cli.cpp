// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
// Command-line front end. Every CSV starts with '#' metadata lines so a file
// can be traced back to the exact parameters that produced it.
#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "wrmt/kernels.hpp"
#include "wrmt/mc.hpp"
#include "wrmt/micro.hpp"
#include "wrmt/parallel.hpp"
#include "wrmt/skewpoly.hpp"
#include "wrmt/verify.hpp"

#ifndef WRMT_VERSION
#define WRMT_VERSION "unknown"
#endif

namespace {

using namespace wrmt;
using json = nlohmann::json;

constexpr int kExitConfig = 1;
constexpr int kExitVerify = 2;
constexpr int kExitCompute = 3;

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// "lo:hi:count", endpoints included.
std::vector<double> parse_grid(const std::string& s) {
  double lo = 0, hi = 0;
  int count = 0;
  char tail = 0;
  if (std::sscanf(s.c_str(), "%lf:%lf:%d%c", &lo, &hi, &count, &tail) != 3 || count < 1 || !(hi >= lo))
    throw ParamError("grid must look like lo:hi:count with hi >= lo and count >= 1, got '" + s + "'");
  std::vector<double> g(count);
  for (int i = 0; i < count; ++i) g[i] = count == 1 ? lo : lo + (hi - lo) * i / (count - 1);
  return g;
}

// "x" or "x:y".
SpectralPoint parse_point(const std::string& s) {
  double x = 0, y = 0;
  char tail = 0;
  const int got = std::sscanf(s.c_str(), "%lf:%lf%c", &x, &y, &tail);
  if (got == 1 || got == 2) return SpectralPoint::complex({x, y});
  throw ParamError("point must look like x or x:y, got '" + s + "'");
}

// Ensemble options shared by most subcommands. Precedence: defaults, then
// the --config file, then explicit flags.
struct EnsembleArgs {
  EnsembleParams p;
  std::string branch = "minus";
  std::string config;
  std::string out;
  std::vector<double> masses;
  CLI::App* active = nullptr;  // the subcommand that was parsed

  void attach(CLI::App* app, bool with_branch, bool with_masses) {
    app->add_option("--n", p.n, "matrix block size n");
    app->add_option("--nu", p.nu, "index nu");
    app->add_option("--a", p.a, "lattice spacing a");
    app->add_option("--mu-r", p.mu_r, "source mu_r");
    app->add_option("--mu-l", p.mu_l, "source mu_l");
    if (with_branch) app->add_option("--branch", branch, "minus (D5) or plus (D_W)");
    if (with_masses) app->add_option("--masses", masses, "2 n_f flavour masses")->delimiter(',');
    app->add_option("--config", config, "JSON file with n, nu, a, mu_r, mu_l (and optionally branch)");
    app->add_option("--out", out, "output file (default stdout)");
  }

  Branch resolve() {
    EnsembleParams flags = p;
    const std::string flag_branch = branch;
    if (!config.empty()) {
      std::ifstream in(config);
      if (!in) throw ParamError("cannot open config file '" + config + "'");
      json j;
      try {
        in >> j;
      } catch (const json::exception& e) {
        throw ParamError(std::string("config is not valid JSON: ") + e.what());
      }
      if (!j.is_object()) throw ParamError("config must be a JSON object");
      static const char* known[] = {"n", "nu", "a", "mu_r", "mu_l", "branch"};
      for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : known) ok = ok || it.key() == k;
        if (!ok) throw ParamError("unknown config key '" + it.key() + "'");
      }
      try {
        EnsembleParams c;
        c.n = j.value("n", c.n);
        c.nu = j.value("nu", c.nu);
        c.a = j.value("a", c.a);
        c.mu_r = j.value("mu_r", c.mu_r);
        c.mu_l = j.value("mu_l", c.mu_l);
        p = c;
        branch = j.value("branch", std::string("minus"));
      } catch (const json::exception& e) {
        throw ParamError(std::string("config has a field of the wrong type: ") + e.what());
      }
    }
    auto given = [&](const char* name) {
      const CLI::Option* o = active ? active->get_option_no_throw(name) : nullptr;
      return o && o->count() > 0;
    };
    if (given("--n")) p.n = flags.n;
    if (given("--nu")) p.nu = flags.nu;
    if (given("--a")) p.a = flags.a;
    if (given("--mu-r")) p.mu_r = flags.mu_r;
    if (given("--mu-l")) p.mu_l = flags.mu_l;
    if (given("--branch")) branch = flag_branch;
    const Branch b = parse_branch(branch);
    p.validate();
    if (masses.size() % 2) throw ParamError("--masses needs an even number of values (2 n_f)");
    return b;
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw ParamError("cannot open output file '" + path + "'");
    }
  }
  std::ostream& os() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

void header(std::ostream& os, const std::string& cmd, const EnsembleParams& p, std::optional<Branch> b) {
  const DerivedScales d = derive_scales(p);
  os << "# wrmt " << cmd << "\n# version " << WRMT_VERSION << "\n";
  os << "# params n=" << p.n << " nu=" << p.nu << " a=" << num(p.a) << " mu_r=" << num(p.mu_r)
     << " mu_l=" << num(p.mu_l);
  if (b) os << " branch=" << branch_name(*b);
  os << "\n# a_hat_plus=" << num(d.a_hat_plus) << " m6_plus=" << num(d.m6_plus) << " l7_plus=" << num(d.l7_plus)
     << "\n";
  if (d.minus_valid)
    os << "# a_hat_minus=" << num(d.a_hat_minus) << " m6_minus=" << num(d.m6_minus)
       << " l7_minus=" << num(d.l7_minus) << "\n";
  os << "# c_minus sign=" << d.c_minus.sign << " log_abs=" << num(d.c_minus.log_abs) << "\n";
  os << "# c_plus sign=" << d.c_plus.sign << " log_abs=" << num(d.c_plus.log_abs) << "\n";
}

int cmd_poly(EnsembleArgs& ea, int lmax) {
  const Branch b = ea.resolve();
  if (lmax < 0) lmax = ea.p.nu + 2 * ea.p.n + 1;
  const std::vector<OrthoPoly> ps = build_ortho(ea.p, b, lmax + 1);
  Output out(ea.out);
  std::ostream& os = out.os();
  header(os, "poly", ea.p, b);
  os << "l,h,power,coefficient\n";
  for (const OrthoPoly& op : ps)
    for (int j = 0; j <= op.poly.degree(); ++j)
      os << op.l << "," << num(op.h) << "," << j << "," << num(op.poly[j]) << "\n";
  return 0;
}

int cmd_skewpoly(EnsembleArgs& ea, int lmax) {
  const Branch b = ea.resolve();
  ea.p.validate_for(b);
  if (lmax < 0) lmax = ea.p.n;
  const SkewSystem s = build_skew_closed(ea.p, b, lmax);
  const WeightContext ctx(ea.p, b);
  Output out(ea.out);
  std::ostream& os = out.os();
  header(os, "skewpoly", ea.p, b);
  for (int l = 0; l <= lmax; ++l) {
    os << "# o l=" << l << " " << num(s.o[l]) << " eps_tilde=" << num(s.eps_tilde[l]);
    if (l < lmax) os << " odd_recursion_residual=" << num(verify_odd_recursion(ctx, s, l));
    os << "\n";
  }
  os << "l,parity,degree,coefficient\n";
  for (int l = 0; l <= lmax; ++l)
    for (int parity = 0; parity < 2; ++parity) {
      const Poly& q = parity ? s.q_odd[l] : s.q_even[l];
      for (int j = 0; j <= q.degree(); ++j)
        os << l << "," << (parity ? "odd" : "even") << "," << j << "," << num(q[j]) << "\n";
    }
  return 0;
}

int cmd_kernel(EnsembleArgs& ea, const std::string& grid_s) {
  const Branch b = ea.resolve();
  ea.p.validate_for(b);
  const std::vector<double> g = parse_grid(grid_s);
  const int n_f = static_cast<int>(ea.masses.size() / 2);
  const WeightContext ctx(ea.p, b);
  const KernelSet ks(ctx, n_f);
  const CDKernel cd{&ks.system(), ks.n_pairs() - 1};
  const std::size_t m = g.size();
  const int nk = b == Branch::Minus ? 3 : 6;
  std::vector<std::vector<cplx>> rows(m * m);
  std::vector<PointEval> ev(m);
  parallel_for(m, [&](std::size_t i) { ev[i] = ks.eval_point(SpectralPoint::real(g[i])); });
  parallel_for(m * m, [&](std::size_t k) {
    const std::size_t i = k / m, j = k % m;
    auto& row = rows[k];
    row.push_back(sigma_sum(cd, g[i], g[j]));
    if (b == Branch::Minus) {
      row.push_back(ks.k1_minus(ev[i], ev[j]));
      row.push_back(ks.k2_minus(ev[i], ev[j]));
      row.push_back(ks.k3_minus(ev[i], ev[j]));
    } else {
      for (int w = 1; w <= 6; ++w) row.push_back(ks.k_plus(w, ev[i], ev[j]));
    }
  });
  Output out(ea.out);
  std::ostream& os = out.os();
  header(os, "kernel", ea.p, b);
  os << "# n_f=" << n_f << " pairs=" << ks.n_pairs() << " sigma sums l=0.." << cd.n_eff << "\n";
  os << "x1,x2,sigma_re,sigma_im";
  for (int w = 1; w <= nk; ++w) os << ",K" << w << "_re,K" << w << "_im";
  os << "\n";
  for (std::size_t k = 0; k < m * m; ++k) {
    os << num(g[k / m]) << "," << num(g[k % m]);
    for (const cplx& v : rows[k]) os << "," << num(v.real()) << "," << num(v.imag());
    os << "\n";
  }
  return 0;
}

int cmd_density(EnsembleArgs& ea, const std::string& which, const std::string& grid_s, const std::string& ygrid_s) {
  ea.resolve();
  const bool d5 = which == "d5";
  if (!d5 && which != "real" && which != "right" && which != "left" && which != "chirality" && which != "complex")
    throw ParamError("--which must be one of d5, real, right, left, chirality, complex");
  const Branch b = d5 ? Branch::Minus : Branch::Plus;
  ea.p.validate_for(b);
  const std::vector<double> g = parse_grid(grid_s);
  const std::vector<double> yg = which == "complex" ? parse_grid(ygrid_s) : std::vector<double>{};
  const WeightContext ctx(ea.p, b);
  const KernelSet ks(ctx, static_cast<int>(ea.masses.size() / 2));
  const DensityProfile prof = density_profile(ks, ea.masses, g, yg);
  Output out(ea.out);
  std::ostream& os = out.os();
  header(os, "density", ea.p, b);
  os << "# which=" << which << " normalization=" << num(prof.normalization) << " masses=";
  for (std::size_t i = 0; i < ea.masses.size(); ++i) os << (i ? ";" : "") << num(ea.masses[i]);
  os << "\n";
  if (which == "complex") {
    os << "x,y,density\n";
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < yg.size(); ++j)
        os << num(g[i]) << "," << num(yg[j]) << "," << num((*prof.complex_component)[i][j]) << "\n";
    return 0;
  }
  os << "x,density\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    double v = prof.real_component[i];
    if (which == "real") v += prof.left_component[i];
    if (which == "left") v = prof.left_component[i];
    if (which == "chirality") v = prof.chirality_component[i];
    os << num(g[i]) << "," << num(v) << "\n";
  }
  return 0;
}

int cmd_corr(EnsembleArgs& ea, const std::vector<std::string>& right, const std::vector<std::string>& left) {
  const Branch b = ea.resolve();
  ea.p.validate_for(b);
  const WeightContext ctx(ea.p, b);
  const KernelSet ks(ctx, static_cast<int>(ea.masses.size() / 2));
  std::vector<SpectralPoint> pr, pl;
  for (const auto& s : right) pr.push_back(parse_point(s));
  for (const auto& s : left) pl.push_back(parse_point(s));
  if (pr.empty() && pl.empty()) throw ParamError("corr needs at least one point (--points / --left)");
  cplx value;
  int n_delta = 0;
  if (b == Branch::Minus) {
    if (!pl.empty()) throw ParamError("--left points only exist on the plus branch");
    std::vector<double> x;
    for (const auto& z : pr) {
      if (!z.is_real()) throw ParamError("minus-branch points must be real");
      x.push_back(z.x);
    }
    value = correlation_minus(ks, ea.masses, x);
    n_delta = 0;
  } else {
    const CorrelationValue cv = correlation_plus(ks, ea.masses, pr, pl);
    value = cv.value;
    n_delta = cv.n_delta;
  }
  Output out(ea.out);
  std::ostream& os = out.os();
  header(os, "corr", ea.p, b);
  os << "# points_right=";
  for (std::size_t i = 0; i < right.size(); ++i) os << (i ? ";" : "") << right[i];
  os << " points_left=";
  for (std::size_t i = 0; i < left.size(); ++i) os << (i ? ";" : "") << left[i];
  os << "\nk_right,k_left,n_delta,value_re,value_im\n";
  os << pr.size() << "," << pl.size() << "," << n_delta << "," << num(value.real()) << "," << num(value.imag()) << "\n";
  return 0;
}

int cmd_mc(EnsembleArgs& ea, McSettings s) {
  ea.resolve();
  const McResult r = accumulate(ea.p, s);
  Output out(ea.out);
  std::ostream& os = out.os();
  header(os, "mc", ea.p, std::nullopt);
  os << "# samples=" << r.samples << " seed=" << s.seed << " streams=" << s.streams << "\n";
  os << "# sector_counts";
  for (std::size_t l = 0; l < r.sector.size(); ++l) os << " l" << l << "=" << r.sector[l];
  os << "\n# mean_tr_a=" << num(r.mean_tr_a) << " mean_tr_wwdag=" << num(r.mean_tr_wwdag) << "\n";
  os << "# mean_real_modes=" << num(r.real_count_sum / r.samples)
     << " mean_chirality_sum=" << num(r.chirality_sum / r.samples) << "\n";
  os << "kind,x_lo,x_hi,y_lo,y_hi,density,std_error\n";
  auto dump = [&](const char* kind, const Histogram& h) {
    for (int i = 0; i < h.bins(); ++i)
      os << kind << "," << num(h.edge(i)) << "," << num(h.edge(i + 1)) << ",0,0," << num(h.density(i)) << ","
         << num(h.std_error(i)) << "\n";
  };
  dump("d5", r.d5);
  dump("dw_real", r.real);
  dump("chirality", r.chirality);
  const Histogram2D& h = r.complex_pts;
  const double dx = (h.x_hi - h.x_lo) / h.nx, dy = (h.y_hi - h.y_lo) / h.ny, norm = double(r.samples) * h.area();
  for (int i = 0; i < h.nx; ++i)
    for (int j = 0; j < h.ny; ++j) {
      const double c = h.count(i, j);
      os << "dw_complex," << num(h.x_lo + i * dx) << "," << num(h.x_lo + (i + 1) * dx) << ","
         << num(h.y_lo + j * dy) << "," << num(h.y_lo + (j + 1) * dy) << "," << num(c / norm) << ","
         << num(std::sqrt(c) / norm) << "\n";
    }
  return 0;
}

int cmd_micro(const std::string& branch, const MicroParams& mp, const std::string& grid_s, double z2,
              const std::string& out_path) {
  const Branch b = parse_branch(branch);
  mp.validate();
  const std::vector<double> g = parse_grid(grid_s);
  struct Row {
    cplx qi, qs, sig;
    int terms = 0;
  };
  std::vector<Row> rows(g.size());
  parallel_for(g.size(), [&](std::size_t i) {
    const MicroSeries s = micro_q_series(mp, b, g[i]);
    rows[i] = {micro_q_integral(mp, b, g[i]), s.value, micro_sigma(mp, b, g[i], z2), s.terms};
  });
  Output out(out_path);
  std::ostream& os = out.os();
  os << "# wrmt micro\n# version " << WRMT_VERSION << "\n# params branch=" << branch_name(b) << " nu=" << mp.nu
     << " a_hat=" << num(mp.a_hat) << " m6=" << num(mp.m6) << " l7=" << num(mp.l7) << " z2_hat=" << num(z2)
     << "\n# limit shapes with n-dependent prefactors stripped\n";
  os << "z_hat,q_integral_re,q_integral_im,q_series_re,q_series_im,series_terms,sigma_re,sigma_im\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    const Row& r = rows[i];
    os << num(g[i]) << "," << num(r.qi.real()) << "," << num(r.qi.imag()) << "," << num(r.qs.real()) << ","
       << num(r.qs.imag()) << "," << r.terms << "," << num(r.sig.real()) << "," << num(r.sig.imag()) << "\n";
  }
  return 0;
}

json report_json(const std::vector<CriterionReport>& reports, bool quick) {
  json j;
  j["quick"] = quick;
  j["criteria"] = json::array();
  bool all = true;
  for (const CriterionReport& r : reports) {
    json c;
    c["id"] = r.id;
    c["title"] = r.title;
    c["passed"] = r.passed();
    c["seconds"] = r.seconds;
    if (r.time_limit > 0.0) c["time_limit_seconds"] = r.time_limit;
    c["checks"] = json::array();
    for (const CheckResult& k : r.checks)
      c["checks"].push_back({{"name", k.name},
                             {"value", k.value},
                             {"tolerance", k.tol},
                             {"comparison", k.at_least ? ">=" : "<="},
                             {"passed", k.passed},
                             {"gating", k.gating},
                             {"detail", k.detail}});
    all = all && r.passed();
    j["criteria"].push_back(c);
  }
  j["passed"] = all;
  return j;
}

int cmd_verify(bool quick, long long samples, std::uint64_t seed, const std::string& out_path) {
  VerifyOptions o;
  o.quick = quick;
  o.mc_samples = samples;
  o.mc_seed = seed;
  const auto reports = run_verification(o);
  const json j = report_json(reports, quick);
  Output out(out_path);
  out.os() << j.dump(2) << "\n";
  return j["passed"].get<bool>() ? 0 : kExitVerify;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Wilson random matrix ensembles: skew-orthogonal polynomials, kernels, Monte Carlo"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(WRMT_VERSION));

  EnsembleArgs ea;
  int lmax = -1;
  std::string grid = "-2:2:9", ygrid = "0.05:2:40", which = "d5";
  std::vector<std::string> right, left;
  McSettings mcs;
  MicroParams mp;
  std::string micro_branch = "minus", micro_out;
  double z2 = 0.5;
  bool quick = false;
  long long v_samples = 100000;
  std::uint64_t v_seed = 7;
  std::string v_out;

  auto* poly = app.add_subcommand("poly", "orthogonal polynomials p_l and norms h_l");
  ea.attach(poly, true, false);
  poly->add_option("--lmax", lmax, "highest degree (default nu + 2n + 1)");

  auto* skew = app.add_subcommand("skewpoly", "skew-orthogonal q polynomials, o_l and recursion residuals");
  ea.attach(skew, true, false);
  skew->add_option("--lmax", lmax, "highest pair index (default n)");

  auto* kern = app.add_subcommand("kernel", "CD kernel and K kernels on a real grid");
  ea.attach(kern, true, true);
  kern->add_option("--grid", grid, "lo:hi:count");

  auto* dens = app.add_subcommand("density", "one-point densities on a grid");
  ea.attach(dens, false, true);
  dens->add_option("--which", which, "d5, real, right, left, chirality or complex");
  dens->add_option("--grid", grid, "lo:hi:count")->default_str("-3:3:200");
  dens->add_option("--ygrid", ygrid, "imaginary-part grid for --which complex");

  auto* corr = app.add_subcommand("corr", "k-point correlation function");
  ea.attach(corr, true, true);
  corr->add_option("--points", right, "points x or x:y (right-handed on the plus branch)")->delimiter(',');
  corr->add_option("--left", left, "left-handed real points (plus branch)")->delimiter(',');

  auto* mc = app.add_subcommand("mc", "Monte Carlo histograms of D5 and D_W spectra");
  ea.attach(mc, false, false);
  mc->add_option("--samples", mcs.samples, "number of matrices");
  mc->add_option("--seed", mcs.seed, "random seed");
  mc->add_option("--bins", mcs.bins, "real-axis bins");
  mc->add_option("--lo", mcs.lo, "lower histogram edge");
  mc->add_option("--hi", mcs.hi, "upper histogram edge");
  mc->add_option("--bins2d", mcs.bins_2d, "complex-plane bins per axis");

  auto* micro = app.add_subcommand("micro", "microscopic limit shapes");
  micro->add_option("--branch", micro_branch, "minus or plus");
  micro->add_option("--nu", mp.nu, "index nu");
  micro->add_option("--ahat", mp.a_hat, "a_hat");
  micro->add_option("--m6", mp.m6, "m6_hat");
  micro->add_option("--l7", mp.l7, "lambda7_hat");
  micro->add_option("--grid", grid, "z_hat grid lo:hi:count")->default_str("-3:3:13");
  micro->add_option("--z2", z2, "second argument of the Sigma column");
  micro->add_option("--out", micro_out, "output file (default stdout)");

  auto* ver = app.add_subcommand("verify", "run the invariant suite and print a JSON report");
  ver->add_flag("--quick", quick, "reduced grids and Monte Carlo sample count");
  ver->add_option("--samples", v_samples, "Monte Carlo samples for the full run");
  ver->add_option("--seed", v_seed, "Monte Carlo seed");
  ver->add_option("--out", v_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  for (CLI::App* sub : app.get_subcommands()) ea.active = sub;

  try {
    if (*poly) return cmd_poly(ea, lmax);
    if (*skew) return cmd_skewpoly(ea, lmax);
    if (*kern) return cmd_kernel(ea, grid);
    if (*dens) return cmd_density(ea, which, dens->get_option("--grid")->count() ? grid : "-3:3:200", ygrid);
    if (*corr) return cmd_corr(ea, right, left);
    if (*mc) return cmd_mc(ea, mcs);
    if (*micro) return cmd_micro(micro_branch, mp, micro->get_option("--grid")->count() ? grid : "-3:3:13", z2, micro_out);
    if (*ver) return cmd_verify(quick, v_samples, v_seed, v_out);
  } catch (const ParamError& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid configuration: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCompute;
  }
  return kExitConfig;
}
