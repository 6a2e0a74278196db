// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/mc.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wrmt/eigen.hpp"
#include "wrmt/parallel.hpp"

namespace wrmt {

namespace {

std::uint64_t mix(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

SplitMix64::SplitMix64(std::uint64_t seed, std::uint64_t stream)
    : state_(mix(seed + 0x9e3779b97f4a7c15ULL) ^ mix(stream * 0xd1b54a32d192ed03ULL + 1)) {}

SplitMix64::result_type SplitMix64::operator()() {
  state_ += 0x9e3779b97f4a7c15ULL;
  return mix(state_);
}

double SplitMix64::uniform() { return ((*this)() >> 11) * 0x1.0p-53 + 0x1.0p-54; }

double SplitMix64::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double r = std::sqrt(-2.0 * std::log(uniform()));
  const double t = 2.0 * std::numbers::pi * uniform();
  spare_ = r * std::sin(t);
  has_spare_ = true;
  return r * std::cos(t);
}

CMatrix WilsonMatrix::dirac_wilson() const {
  const int d = 2 * n + nu;
  CMatrix m(d, d);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = a(i, j);
  for (int i = 0; i < n + nu; ++i)
    for (int j = 0; j < n + nu; ++j) m(n + i, n + j) = b(i, j);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n + nu; ++j) {
      m(i, n + j) = w(i, j);
      m(n + j, i) = -std::conj(w(i, j));
    }
  return m;
}

CMatrix WilsonMatrix::d5() const {
  CMatrix m = dirac_wilson();
  for (int i = n; i < 2 * n + nu; ++i)
    for (int j = 0; j < 2 * n + nu; ++j) m(i, j) = -m(i, j);
  return m;
}

WilsonMatrix sample(const EnsembleParams& p, SplitMix64& rng) {
  p.validate();
  const int n = p.n, m = p.n + p.nu;
  const double a2 = p.a * p.a;
  auto herm = [&](int k, double mu) {
    CMatrix h(k, k);
    const double sd_diag = std::sqrt(a2 / n), sd_off = std::sqrt(a2 / (2.0 * n));
    for (int i = 0; i < k; ++i) {
      h(i, i) = a2 * mu / n + sd_diag * rng.normal();
      for (int j = i + 1; j < k; ++j) {
        const double re = sd_off * rng.normal();
        const double im = sd_off * rng.normal();
        h(i, j) = cplx(re, im);
        h(j, i) = cplx(re, -im);
      }
    }
    return h;
  };
  WilsonMatrix wm;
  wm.n = n;
  wm.nu = p.nu;
  wm.a = herm(n, p.mu_r);
  wm.b = herm(m, p.mu_l);
  wm.w = CMatrix(n, m);
  const double sd = std::sqrt(1.0 / (2.0 * n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) {
      const double re = sd * rng.normal();
      wm.w(i, j) = cplx(re, sd * rng.normal());
    }
  return wm;
}

SpectrumSample spectrum(const WilsonMatrix& m) {
  const int d = 2 * m.n + m.nu;
  if (d > 60) throw std::invalid_argument("spectrum: dimension above 60");
  SpectrumSample s;
  s.d5_eigs = hermitian_eigenvalues(m.d5());
  const CMatrix dw = m.dirac_wilson();
  std::vector<cplx> ev = general_eigenvalues(dw);
  double scale = 0.0;
  for (const cplx& e : ev) scale = std::max(scale, std::abs(e));
  const double tau = 1e-8 * std::max(scale, 1.0);
  std::sort(ev.begin(), ev.end(), [](cplx x, cplx y) { return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag(); });
  std::vector<cplx> complex_ev;
  for (const cplx& e : ev) {
    s.complex_abs_imag.push_back(std::abs(e.imag()));
    if (std::abs(e.imag()) < tau) {
      const std::vector<cplx> v = eigenvector(dw, cplx(e.real(), 0.0));
      double num = 0.0, den = 0.0;
      for (int i = 0; i < d; ++i) {
        const double w = std::norm(v[i]);
        num += i < m.n ? w : -w;
        den += w;
      }
      s.dw_eigs.push_back(SpectralPoint::real(e.real()));
      s.chiralities.push_back(num / den);
    } else {
      complex_ev.push_back(e);
    }
  }
  for (const cplx& e : complex_ev) s.dw_eigs.push_back(SpectralPoint::complex(e));
  s.l_sector = static_cast<int>(complex_ev.size()) / 2;
  return s;
}

Histogram::Histogram(double lo_, double hi_, int bins) : lo(lo_), hi(hi_), sum(bins, 0.0), sum_sq(bins, 0.0) {}

void Histogram::add(double x, double w) {
  if (!(x >= lo && x < hi)) return;
  const int i = std::min(bins() - 1, static_cast<int>((x - lo) / width()));
  sum[i] += w;
  sum_sq[i] += w * w;
}

void Histogram::merge(const Histogram& o) {
  for (int i = 0; i < bins(); ++i) {
    sum[i] += o.sum[i];
    sum_sq[i] += o.sum_sq[i];
  }
  samples += o.samples;
}

double Histogram::density(int i) const { return sum[i] / (static_cast<double>(samples) * width()); }

double Histogram::std_error(int i) const {
  // Poisson-type error of a weighted count, adequate when counts per sample are small.
  return std::sqrt(sum_sq[i]) / (static_cast<double>(samples) * width());
}

double Histogram::total() const {
  double t = 0.0;
  for (double v : sum) t += v;
  return t;
}

Histogram2D::Histogram2D(double xl, double xh, int nx_, double yl, double yh, int ny_)
    : x_lo(xl), x_hi(xh), y_lo(yl), y_hi(yh), nx(nx_), ny(ny_), sum(static_cast<std::size_t>(nx_) * ny_, 0.0) {}

void Histogram2D::add(double x, double y) {
  if (!(x >= x_lo && x < x_hi && y >= y_lo && y < y_hi)) return;
  const int i = std::min(nx - 1, static_cast<int>((x - x_lo) / (x_hi - x_lo) * nx));
  const int j = std::min(ny - 1, static_cast<int>((y - y_lo) / (y_hi - y_lo) * ny));
  sum[i * ny + j] += 1.0;
}

void Histogram2D::merge(const Histogram2D& o) {
  for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += o.sum[i];
  samples += o.samples;
}

McResult accumulate(const EnsembleParams& p, const McSettings& s) {
  if (s.samples < 1) throw ParamError("samples must be at least 1");
  if (s.bins < 1 || s.bins_2d < 1 || !(s.hi > s.lo) || !(s.y_hi > 0)) throw ParamError("invalid histogram layout");
  const int streams = std::max(1, s.streams);
  auto fresh = [&] {
    McResult r;
    r.d5 = Histogram(s.lo, s.hi, s.bins);
    r.real = Histogram(s.lo, s.hi, s.bins);
    r.chirality = Histogram(s.lo, s.hi, s.bins);
    r.complex_pts = Histogram2D(s.lo, s.hi, s.bins_2d, -s.y_hi, s.y_hi, s.bins_2d);
    r.imag_audit = Histogram(-17.0, 1.0, 36);
    r.sector.assign(p.n + 1, 0);
    return r;
  };
  std::vector<McResult> parts(streams);
  parallel_for(streams, [&](std::size_t k) {
    McResult r = fresh();
    const long long begin = s.samples * static_cast<long long>(k) / streams;
    const long long end = s.samples * static_cast<long long>(k + 1) / streams;
    SplitMix64 rng(s.seed, k);
    for (long long it = begin; it < end; ++it) {
      const WilsonMatrix m = sample(p, rng);
      const SpectrumSample sp = spectrum(m);
      for (double e : sp.d5_eigs) r.d5.add(e);
      std::size_t ci = 0;
      double n_real = 0.0, chi = 0.0;
      for (const SpectralPoint& z : sp.dw_eigs) {
        if (z.is_real()) {
          r.real.add(z.x);
          const double c = sp.chiralities[ci++];
          const double wgt = c > 0 ? -1.0 : 1.0;
          r.chirality.add(z.x, wgt);
          n_real += 1.0;
          chi += wgt;
        } else {
          r.complex_pts.add(z.x, z.y);
        }
      }
      r.real_count_sum += n_real;
      r.real_count_sq += n_real * n_real;
      r.chirality_sum += chi;
      r.chirality_sq += chi * chi;
      for (double v : sp.complex_abs_imag) r.imag_audit.add(std::log10(std::max(v, 1e-300)));
      r.sector[std::min(sp.l_sector, p.n)] += 1;
      cplx tra = 0.0;
      for (int i = 0; i < m.n; ++i) tra += m.a(i, i);
      double tww = 0.0;
      for (int i = 0; i < m.w.rows(); ++i)
        for (int j = 0; j < m.w.cols(); ++j) tww += std::norm(m.w(i, j));
      r.mean_tr_a += tra.real();
      r.mean_tr_wwdag += tww;
    }
    const long long cnt = end - begin;
    r.samples = cnt;
    r.d5.samples = r.real.samples = r.chirality.samples = r.imag_audit.samples = r.complex_pts.samples = cnt;
    parts[k] = std::move(r);
  });
  McResult out = fresh();
  for (const McResult& r : parts) {
    out.d5.merge(r.d5);
    out.real.merge(r.real);
    out.chirality.merge(r.chirality);
    out.complex_pts.merge(r.complex_pts);
    out.imag_audit.merge(r.imag_audit);
    for (std::size_t l = 0; l < out.sector.size(); ++l) out.sector[l] += r.sector[l];
    out.mean_tr_a += r.mean_tr_a;
    out.mean_tr_wwdag += r.mean_tr_wwdag;
    out.real_count_sum += r.real_count_sum;
    out.real_count_sq += r.real_count_sq;
    out.chirality_sum += r.chirality_sum;
    out.chirality_sq += r.chirality_sq;
    out.samples += r.samples;
  }
  out.mean_tr_a /= out.samples;
  out.mean_tr_wwdag /= out.samples;
  return out;
}

}  // namespace wrmt
