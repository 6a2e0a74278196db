// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

namespace wrmt {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols, T v = T{}) : r_(rows), c_(cols), d_(static_cast<std::size_t>(rows) * cols, v) {}
  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = T{1};
    return m;
  }

  int rows() const { return r_; }
  int cols() const { return c_; }
  T& operator()(int i, int j) { return d_[static_cast<std::size_t>(i) * c_ + j]; }
  const T& operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * c_ + j]; }

  Matrix transpose() const {
    Matrix t(c_, r_);
    for (int i = 0; i < r_; ++i)
      for (int j = 0; j < c_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }
  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.c_ != b.r_) throw std::invalid_argument("Matrix: shape mismatch in product");
    Matrix m(a.r_, b.c_);
    for (int i = 0; i < a.r_; ++i)
      for (int k = 0; k < a.c_; ++k) {
        const T v = a(i, k);
        for (int j = 0; j < b.c_; ++j) m(i, j) += v * b(k, j);
      }
    return m;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < a.d_.size(); ++k) a.d_[k] += b.d_[k];
    return a;
  }
  friend Matrix operator-(Matrix a, const Matrix& b) {
    for (std::size_t k = 0; k < a.d_.size(); ++k) a.d_[k] -= b.d_[k];
    return a;
  }
  void swap_rows(int i, int j) {
    for (int k = 0; k < c_; ++k) std::swap((*this)(i, k), (*this)(j, k));
  }
  void swap_cols(int i, int j) {
    for (int k = 0; k < r_; ++k) std::swap((*this)(k, i), (*this)(k, j));
  }

 private:
  int r_ = 0, c_ = 0;
  std::vector<T> d_;
};

using RMatrix = Matrix<double>;
using CMatrix = Matrix<std::complex<double>>;

// Skew-symmetry residual max|A + A^T| / max|A|.
template <class T>
double skew_residual(const Matrix<T>& a);

// Parlett-Reid elimination with pivoting. Throws on odd or non-skew input.
template <class T>
T pfaffian(Matrix<T> a);
// Expansion along the first row; exponential cost, an oracle for small dims.
template <class T>
T pfaffian_expand(const Matrix<T>& a);
template <class T>
T determinant(Matrix<T> a);
template <class T>
Matrix<T> inverse(Matrix<T> a);

template <class T>
struct SchurResult {
  T direct;    // Pf of the assembled block matrix
  T factored;  // Pf(A) Pf(C + B^T A^{-1} B)
};
// Pf[[A, B], [-B^T, C]] = Pf(A) Pf(C + B^T A^{-1} B).
template <class T>
SchurResult<T> pfaffian_schur(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c);

RMatrix random_skew(int dim, std::mt19937_64& rng);
RMatrix random_matrix(int rows, int cols, std::mt19937_64& rng);

// Finite point set with positive masses; integrals become weighted sums.
struct DiscreteMeasure {
  std::vector<double> masses;
  int size() const { return static_cast<int>(masses.size()); }
};

struct DeBruijnResult {
  double brute = 0.0;
  double formula = 0.0;
  double residual = 0.0;  // |brute - formula| / sum of |brute-force terms|
};

// Test functions of the Pfaffian theorem (index over support points last):
// a: N2 x M, b: (N2-N1) x N2 constant rows, c: M x M antisymmetric,
// d: K x M, e: K x K antisymmetric, with K = 2 N3 - N1.
struct PfaffianTheoremData {
  RMatrix a, b, c, d, e;
};
PfaffianTheoremData random_pfaffian_data(int m, int n1, int n2, int n3, std::mt19937_64& rng);
DeBruijnResult debruijn_pfaffian_check(const DiscreteMeasure& dm, int n1, int n2, int n3,
                                       const PfaffianTheoremData& f);

// Test functions of the determinant theorem:
// a, b: N1 x M, c: (N1-NR-NL) x N1, d: M x M, e: (N2-NL) x M,
// f: (N2-NR) x M, h: (N2-NR) x (N2-NL).
struct DeterminantTheoremData {
  RMatrix a, b, c, d, e, f, h;
};
DeterminantTheoremData random_determinant_data(int m, int n1, int n2, int nr, int nl,
                                               std::mt19937_64& rng);
DeBruijnResult debruijn_determinant_check(const DiscreteMeasure& dm, int n1, int n2, int nr, int nl,
                                          const DeterminantTheoremData& f);

}  // namespace wrmt
