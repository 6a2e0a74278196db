// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace wrmt {

using cplx = std::complex<double>;

// Univariate polynomial in the monomial basis, c[j] multiplies z^j.
// Arithmetic accumulates in long double; storage is double.
class Poly {
 public:
  static constexpr int kMaxDegree = 400;

  Poly() : c_{0.0} {}
  explicit Poly(std::vector<double> coeffs);
  Poly(std::initializer_list<double> coeffs) : Poly(std::vector<double>(coeffs)) {}
  static Poly constant(double v) { return Poly({v}); }
  static Poly monomial(int k, double v = 1.0);

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<double>& coeffs() const { return c_; }
  double operator[](int j) const { return j >= 0 && j <= degree() ? c_[j] : 0.0; }
  double leading() const { return c_.back(); }

  double operator()(double x) const;
  cplx operator()(cplx z) const;

  Poly derivative() const;
  Poly mul_x() const;
  // Coefficients of P(alpha z + beta).
  Poly compose_affine(double alpha, double beta) const;

  Poly& operator+=(const Poly& o);
  Poly& operator-=(const Poly& o);
  Poly& operator*=(double s);
  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, double s) { return a *= s; }
  friend Poly operator*(double s, Poly a) { return a *= s; }
  friend Poly operator*(const Poly& a, const Poly& b);

 private:
  void trim();
  std::vector<double> c_;
};

// Max |a_j - b_j| / max(max|a_j|, max|b_j|, tiny).
double coeff_rel_diff(const Poly& a, const Poly& b);

// Hermite polynomials as coefficient tables.
Poly he_poly(int l);  // probabilists', monic
Poly h_poly(int l);   // physicists'

}  // namespace wrmt
