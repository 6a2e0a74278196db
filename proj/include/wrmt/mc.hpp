// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <vector>

#include "wrmt/params.hpp"
#include "wrmt/skewlinalg.hpp"
#include "wrmt/weights.hpp"

namespace wrmt {

// SplitMix64 stream keyed by (seed, stream id). Normal deviates use
// Box-Muller so that output is identical across standard libraries.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;
  SplitMix64(std::uint64_t seed, std::uint64_t stream = 0);
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()();
  double uniform();  // (0, 1)
  double normal();

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

struct WilsonMatrix {
  int n = 0, nu = 0;
  CMatrix a, b, w;  // n x n, (n+nu) x (n+nu), n x (n+nu)

  CMatrix dirac_wilson() const;  // [[A, W], [-W^dag, B]]
  CMatrix d5() const;            // [[A, W], [W^dag, -B]]
};

WilsonMatrix sample(const EnsembleParams& p, SplitMix64& rng);

struct SpectrumSample {
  std::vector<double> d5_eigs;          // ascending
  std::vector<SpectralPoint> dw_eigs;   // real modes first, then pairs
  std::vector<double> chiralities;      // per real D_W eigenvalue
  std::vector<double> complex_abs_imag;  // |Im| of every eigenvalue, for threshold audits
  int l_sector = 0;                     // number of complex pairs
};

// tau_real = 1e-8 times the spectral scale.
SpectrumSample spectrum(const WilsonMatrix& m);

struct Histogram {
  double lo = 0.0, hi = 1.0;
  std::vector<double> sum, sum_sq;  // weighted counts and squared weights per bin
  long long samples = 0;

  Histogram() = default;
  Histogram(double lo, double hi, int bins);
  int bins() const { return static_cast<int>(sum.size()); }
  double width() const { return (hi - lo) / bins(); }
  double edge(int i) const { return lo + i * width(); }
  void add(double x, double w = 1.0);
  void merge(const Histogram& o);
  // Per-sample density and its standard error in bin i.
  double density(int i) const;
  double std_error(int i) const;
  double total() const;
};

struct Histogram2D {
  double x_lo = 0.0, x_hi = 1.0, y_lo = 0.0, y_hi = 1.0;
  int nx = 1, ny = 1;
  std::vector<double> sum;
  long long samples = 0;

  Histogram2D() = default;
  Histogram2D(double x_lo, double x_hi, int nx, double y_lo, double y_hi, int ny);
  void add(double x, double y);
  void merge(const Histogram2D& o);
  double count(int i, int j) const { return sum[i * ny + j]; }
  double area() const { return (x_hi - x_lo) / nx * (y_hi - y_lo) / ny; }
};

struct McSettings {
  long long samples = 100000;
  std::uint64_t seed = 1;
  int bins = 40;
  double lo = -2.5, hi = 2.5;  // real-line range
  double y_hi = 2.0;           // complex mesh covers y in [-y_hi, y_hi]
  int bins_2d = 12;
  int streams = 64;  // fixed, so output does not depend on the thread count
};

struct McResult {
  Histogram d5, real, chirality;
  Histogram2D complex_pts;
  Histogram imag_audit;           // |Im lambda| on a log10 axis
  std::vector<long long> sector;  // counts of l = 0..n
  double mean_tr_a = 0.0, mean_tr_wwdag = 0.0;
  // Per-sample moments (sum, sum of squares) of the number of real D_W modes
  // and of the summed chirality weights, independent of histogram range.
  double real_count_sum = 0.0, real_count_sq = 0.0;
  double chirality_sum = 0.0, chirality_sq = 0.0;
  long long samples = 0;
};

McResult accumulate(const EnsembleParams& p, const McSettings& s);

}  // namespace wrmt
