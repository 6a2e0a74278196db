// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/poly.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace wrmt {

namespace {
void check_degree(std::size_t size) {
  if (size > static_cast<std::size_t>(Poly::kMaxDegree) + 1)
    throw std::length_error("Poly: degree exceeds " + std::to_string(Poly::kMaxDegree));
}
}  // namespace

Poly::Poly(std::vector<double> coeffs) : c_(std::move(coeffs)) {
  if (c_.empty()) c_.push_back(0.0);
  check_degree(c_.size());
  trim();
}

Poly Poly::monomial(int k, double v) {
  std::vector<double> c(k + 1, 0.0);
  c[k] = v;
  return Poly(std::move(c));
}

void Poly::trim() {
  while (c_.size() > 1 && c_.back() == 0.0) c_.pop_back();
}

double Poly::operator()(double x) const {
  long double acc = 0.0L;
  for (int j = degree(); j >= 0; --j) acc = acc * x + c_[j];
  return static_cast<double>(acc);
}

cplx Poly::operator()(cplx z) const {
  std::complex<long double> acc = 0.0L;
  const std::complex<long double> zz(z.real(), z.imag());
  for (int j = degree(); j >= 0; --j) acc = acc * zz + static_cast<long double>(c_[j]);
  return {static_cast<double>(acc.real()), static_cast<double>(acc.imag())};
}

Poly Poly::derivative() const {
  if (degree() == 0) return Poly();
  std::vector<double> d(degree());
  for (int j = 1; j <= degree(); ++j) d[j - 1] = j * c_[j];
  return Poly(std::move(d));
}

Poly Poly::mul_x() const {
  std::vector<double> d(c_.size() + 1, 0.0);
  std::copy(c_.begin(), c_.end(), d.begin() + 1);
  return Poly(std::move(d));
}

Poly Poly::compose_affine(double alpha, double beta) const {
  // Horner in polynomial arithmetic: out = out*(alpha z + beta) + c_j.
  std::vector<long double> out{0.0L};
  for (int j = degree(); j >= 0; --j) {
    std::vector<long double> next(out.size() + 1, 0.0L);
    for (std::size_t k = 0; k < out.size(); ++k) {
      next[k] += out[k] * beta;
      next[k + 1] += out[k] * alpha;
    }
    next[0] += c_[j];
    out.swap(next);
  }
  std::vector<double> d(out.begin(), out.end());
  return Poly(std::move(d));
}

Poly& Poly::operator+=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] += o.c_[j];
  trim();
  return *this;
}

Poly& Poly::operator-=(const Poly& o) {
  if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), 0.0);
  for (std::size_t j = 0; j < o.c_.size(); ++j) c_[j] -= o.c_[j];
  trim();
  return *this;
}

Poly& Poly::operator*=(double s) {
  for (double& v : c_) v *= s;
  trim();
  return *this;
}

Poly operator*(const Poly& a, const Poly& b) {
  std::vector<long double> acc(a.c_.size() + b.c_.size() - 1, 0.0L);
  check_degree(acc.size());
  for (std::size_t i = 0; i < a.c_.size(); ++i)
    for (std::size_t j = 0; j < b.c_.size(); ++j)
      acc[i + j] += static_cast<long double>(a.c_[i]) * b.c_[j];
  return Poly(std::vector<double>(acc.begin(), acc.end()));
}

double coeff_rel_diff(const Poly& a, const Poly& b) {
  const int d = std::max(a.degree(), b.degree());
  double diff = 0.0, scale = 1e-300;
  for (int j = 0; j <= d; ++j) {
    diff = std::max(diff, std::abs(a[j] - b[j]));
    scale = std::max({scale, std::abs(a[j]), std::abs(b[j])});
  }
  return diff / scale;
}

Poly he_poly(int l) {
  if (l < 0) throw std::invalid_argument("he_poly: negative degree");
  Poly h0{1.0};
  if (l == 0) return h0;
  Poly h1{0.0, 1.0};
  for (int k = 1; k < l; ++k) {
    Poly h2 = h1.mul_x() - static_cast<double>(k) * h0;
    h0 = std::move(h1);
    h1 = std::move(h2);
  }
  return h1;
}

Poly h_poly(int l) {
  if (l < 0) throw std::invalid_argument("h_poly: negative degree");
  Poly h0{1.0};
  if (l == 0) return h0;
  Poly h1{0.0, 2.0};
  for (int k = 1; k < l; ++k) {
    Poly h2 = 2.0 * h1.mul_x() - 2.0 * k * h0;
    h0 = std::move(h1);
    h1 = std::move(h2);
  }
  return h1;
}

}  // namespace wrmt
