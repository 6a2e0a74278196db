// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#include "wrmt/skewlinalg.hpp"

#include <algorithm>
#include <cmath>

#include "wrmt/special.hpp"

namespace wrmt {

template <class T>
double skew_residual(const Matrix<T>& a) {
  double num = 0.0, den = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j) {
      num = std::max(num, std::abs(a(i, j) + a(j, i)));
      den = std::max(den, std::abs(a(i, j)));
    }
  return den > 0.0 ? num / den : 0.0;
}

template <class T>
T pfaffian(Matrix<T> a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("pfaffian: matrix not square");
  if (n % 2) throw std::invalid_argument("pfaffian: odd dimension");
  if (skew_residual(a) > 1e-12) throw std::invalid_argument("pfaffian: matrix not skew-symmetric");
  T pf{1};
  for (int k = 0; k + 1 < n; k += 2) {
    int kp = k + 1;
    double best = std::abs(a(k + 1, k));
    for (int i = k + 2; i < n; ++i)
      if (std::abs(a(i, k)) > best) {
        best = std::abs(a(i, k));
        kp = i;
      }
    if (kp != k + 1) {
      a.swap_rows(k + 1, kp);
      a.swap_cols(k + 1, kp);
      pf = -pf;
    }
    if (a(k + 1, k) == T{}) return T{};
    pf *= a(k, k + 1);
    if (k + 2 < n) {
      const T piv = a(k, k + 1);
      std::vector<T> tau(n - k - 2), col(n - k - 2);
      for (int i = k + 2; i < n; ++i) {
        tau[i - k - 2] = a(k, i) / piv;
        col[i - k - 2] = a(i, k + 1);
      }
      for (int i = k + 2; i < n; ++i)
        for (int j = k + 2; j < n; ++j)
          a(i, j) += tau[i - k - 2] * col[j - k - 2] - col[i - k - 2] * tau[j - k - 2];
    }
  }
  return pf;
}

namespace {

template <class T>
T pf_expand_rec(const Matrix<T>& a, std::vector<int>& idx) {
  if (idx.empty()) return T{1};
  const int first = idx[0];
  T acc{};
  for (std::size_t j = 1; j < idx.size(); ++j) {
    const int other = idx[j];
    if (a(first, other) == T{}) continue;
    std::vector<int> rest;
    for (std::size_t k = 1; k < idx.size(); ++k)
      if (k != j) rest.push_back(idx[k]);
    const double sign = (j % 2) ? 1.0 : -1.0;
    acc += sign * a(first, other) * pf_expand_rec(a, rest);
  }
  return acc;
}

}  // namespace

template <class T>
T pfaffian_expand(const Matrix<T>& a) {
  if (a.rows() % 2) throw std::invalid_argument("pfaffian_expand: odd dimension");
  std::vector<int> idx(a.rows());
  for (int i = 0; i < a.rows(); ++i) idx[i] = i;
  return pf_expand_rec(a, idx);
}

template <class T>
T determinant(Matrix<T> a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("determinant: matrix not square");
  T det{1};
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == T{}) return T{};
    if (p != k) {
      a.swap_rows(p, k);
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const T f = a(i, k) / a(k, k);
      for (int j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

template <class T>
Matrix<T> inverse(Matrix<T> a) {
  const int n = a.rows();
  if (a.cols() != n) throw std::invalid_argument("inverse: matrix not square");
  Matrix<T> inv = Matrix<T>::identity(n);
  for (int k = 0; k < n; ++k) {
    int p = k;
    for (int i = k + 1; i < n; ++i)
      if (std::abs(a(i, k)) > std::abs(a(p, k))) p = i;
    if (a(p, k) == T{}) throw std::domain_error("inverse: singular matrix");
    a.swap_rows(p, k);
    inv.swap_rows(p, k);
    const T d = a(k, k);
    for (int j = 0; j < n; ++j) {
      a(k, j) /= d;
      inv(k, j) /= d;
    }
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      const T f = a(i, k);
      if (f == T{}) continue;
      for (int j = 0; j < n; ++j) {
        a(i, j) -= f * a(k, j);
        inv(i, j) -= f * inv(k, j);
      }
    }
  }
  return inv;
}

template <class T>
SchurResult<T> pfaffian_schur(const Matrix<T>& a, const Matrix<T>& b, const Matrix<T>& c) {
  const int p = a.rows(), q = c.rows();
  if (b.rows() != p || b.cols() != q) throw std::invalid_argument("pfaffian_schur: shape mismatch");
  Matrix<T> full(p + q, p + q);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < p; ++j) full(i, j) = a(i, j);
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) full(p + i, p + j) = c(i, j);
  for (int i = 0; i < p; ++i)
    for (int j = 0; j < q; ++j) {
      full(i, p + j) = b(i, j);
      full(p + j, i) = -b(i, j);
    }
  SchurResult<T> r;
  r.direct = pfaffian(full);
  Matrix<T> s = c + b.transpose() * inverse(a) * b;
  // Restore exact skew-symmetry lost to rounding.
  for (int i = 0; i < q; ++i) {
    s(i, i) = T{};
    for (int j = i + 1; j < q; ++j) {
      const T v = 0.5 * (s(i, j) - s(j, i));
      s(i, j) = v;
      s(j, i) = -v;
    }
  }
  r.factored = pfaffian(a) * pfaffian(s);
  return r;
}

template double skew_residual(const RMatrix&);
template double skew_residual(const CMatrix&);
template double pfaffian(RMatrix);
template std::complex<double> pfaffian(CMatrix);
template double pfaffian_expand(const RMatrix&);
template std::complex<double> pfaffian_expand(const CMatrix&);
template double determinant(RMatrix);
template std::complex<double> determinant(CMatrix);
template RMatrix inverse(RMatrix);
template CMatrix inverse(CMatrix);
template SchurResult<double> pfaffian_schur(const RMatrix&, const RMatrix&, const RMatrix&);
template SchurResult<std::complex<double>> pfaffian_schur(const CMatrix&, const CMatrix&, const CMatrix&);

RMatrix random_matrix(int rows, int cols, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  RMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = g(rng);
  return m;
}

RMatrix random_skew(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  RMatrix m(dim, dim);
  for (int i = 0; i < dim; ++i)
    for (int j = i + 1; j < dim; ++j) {
      m(i, j) = g(rng);
      m(j, i) = -m(i, j);
    }
  return m;
}

namespace {

// Calls f(tuple) for every tuple in [0, m)^k.
template <class F>
void for_each_tuple(int m, int k, F&& f) {
  std::vector<int> t(k, 0);
  while (true) {
    f(t);
    int i = k - 1;
    while (i >= 0 && ++t[i] == m) t[i--] = 0;
    if (i < 0) return;
  }
}

double parity_sign(long e) { return (e % 2) ? -1.0 : 1.0; }

}  // namespace

PfaffianTheoremData random_pfaffian_data(int m, int n1, int n2, int n3, std::mt19937_64& rng) {
  const int k = 2 * n3 - n1;
  PfaffianTheoremData f;
  f.a = random_matrix(n2, m, rng);
  f.b = random_matrix(n2 - n1, n2, rng);
  f.c = random_skew(m, rng);
  f.d = random_matrix(k, m, rng);
  f.e = random_skew(k, rng);
  return f;
}

DeBruijnResult debruijn_pfaffian_check(const DiscreteMeasure& dm, int n1, int n2, int n3,
                                       const PfaffianTheoremData& f) {
  const int m = dm.size(), k = 2 * n3 - n1;
  if (n1 < 1 || n2 < n1 || k < 0) throw std::invalid_argument("debruijn_pfaffian_check: bad sizes");
  const auto& w = dm.masses;
  DeBruijnResult r;
  double scale = 0.0;
  for_each_tuple(m, n1, [&](const std::vector<int>& zs) {
    RMatrix mat(n2, n2);
    for (int b = 0; b < n1; ++b)
      for (int c = 0; c < n2; ++c) mat(b, c) = f.a(c, zs[b]);
    for (int b = 0; b < n2 - n1; ++b)
      for (int c = 0; c < n2; ++c) mat(n1 + b, c) = f.b(b, c);
    RMatrix pm(n1 + k, n1 + k);
    for (int b = 0; b < n1; ++b) {
      for (int c = 0; c < n1; ++c) pm(b, c) = f.c(zs[b], zs[c]);
      for (int c = 0; c < k; ++c) {
        pm(b, n1 + c) = f.d(c, zs[b]);
        pm(n1 + c, b) = -f.d(c, zs[b]);
      }
    }
    for (int b = 0; b < k; ++b)
      for (int c = 0; c < k; ++c) pm(n1 + b, n1 + c) = f.e(b, c);
    double wt = 1.0;
    for (int z : zs) wt *= w[z];
    const double term = wt * determinant(mat) * pfaffian(pm);
    r.brute += term;
    scale += std::abs(term);
  });

  const int d = n2 + k + (n2 - n1);
  RMatrix mx(d, d);
  for (int b = 0; b < n2; ++b)
    for (int c = 0; c < n2; ++c) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) acc += f.a(b, i) * f.a(c, j) * f.c(i, j) * w[i] * w[j];
      mx(b, c) = acc;
    }
  for (int b = 0; b < n2; ++b)
    for (int c = 0; c < k; ++c) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i) acc += f.a(b, i) * f.d(c, i) * w[i];
      mx(b, n2 + c) = acc;
      mx(n2 + c, b) = -acc;
    }
  for (int b = 0; b < k; ++b)
    for (int c = 0; c < k; ++c) mx(n2 + b, n2 + c) = f.e(b, c);
  for (int b = 0; b < n2; ++b)
    for (int c = 0; c < n2 - n1; ++c) {
      mx(b, n2 + k + c) = f.b(c, b);
      mx(n2 + k + c, b) = -f.b(c, b);
    }
  const long e = static_cast<long>(n2 - n1) * (n1 + n2 - 1) / 2;
  r.formula = parity_sign(e) * factorial(n1) * pfaffian(mx);
  r.residual = std::abs(r.brute - r.formula) / std::max(scale, 1e-300);
  if (scale == 0.0) r.residual = std::abs(r.formula);
  return r;
}

DeterminantTheoremData random_determinant_data(int m, int n1, int n2, int nr, int nl,
                                               std::mt19937_64& rng) {
  DeterminantTheoremData f;
  f.a = random_matrix(n1, m, rng);
  f.b = random_matrix(n1, m, rng);
  f.c = random_matrix(n1 - nr - nl, n1, rng);
  f.d = random_matrix(m, m, rng);
  f.e = random_matrix(n2 - nl, m, rng);
  f.f = random_matrix(n2 - nr, m, rng);
  f.h = random_matrix(n2 - nr, n2 - nl, rng);
  return f;
}

DeBruijnResult debruijn_determinant_check(const DiscreteMeasure& dm, int n1, int n2, int nr, int nl,
                                          const DeterminantTheoremData& f) {
  const int m = dm.size();
  if (n1 < nr + nl || n2 < nl || nl < nr || nr < 0)
    throw std::invalid_argument("debruijn_determinant_check: bad sizes");
  const auto& w = dm.masses;
  DeBruijnResult r;
  double scale = 0.0;
  for_each_tuple(m, nr, [&](const std::vector<int>& zr) {
    for_each_tuple(m, nl, [&](const std::vector<int>& zl) {
      RMatrix m1(n1, n1), m2(n2, n2);
      for (int b = 0; b < nr; ++b)
        for (int c = 0; c < n1; ++c) m1(b, c) = f.a(c, zr[b]);
      for (int b = 0; b < nl; ++b)
        for (int c = 0; c < n1; ++c) m1(nr + b, c) = f.b(c, zl[b]);
      for (int b = 0; b < n1 - nr - nl; ++b)
        for (int c = 0; c < n1; ++c) m1(nr + nl + b, c) = f.c(b, c);
      for (int b = 0; b < nr; ++b) {
        for (int c = 0; c < nl; ++c) m2(b, c) = f.d(zr[b], zl[c]);
        for (int c = 0; c < n2 - nl; ++c) m2(b, nl + c) = f.e(c, zr[b]);
      }
      for (int b = 0; b < n2 - nr; ++b) {
        for (int c = 0; c < nl; ++c) m2(nr + b, c) = f.f(b, zl[c]);
        for (int c = 0; c < n2 - nl; ++c) m2(nr + b, nl + c) = f.h(b, c);
      }
      double wt = 1.0;
      for (int z : zr) wt *= w[z];
      for (int z : zl) wt *= w[z];
      const double term = wt * determinant(m1) * determinant(m2);
      r.brute += term;
      scale += std::abs(term);
    });
  });

  const int s0 = n1, s1 = n2 - nr, s2 = n2 - nl, s3 = n1 - nr - nl;
  const int o1 = s0, o2 = o1 + s1, o3 = o2 + s2, d = o3 + s3;
  RMatrix x(d, d);
  for (int b = 0; b < n1; ++b)
    for (int c = 0; c < n1; ++c) {
      double acc = 0.0;
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
          acc += (f.a(b, i) * f.b(c, j) - f.a(c, i) * f.b(b, j)) * f.d(i, j) * w[i] * w[j];
      x(b, c) = acc;
    }
  for (int b = 0; b < n1; ++b) {
    for (int c = 0; c < s1; ++c) {  // Q^T
      double acc = 0.0;
      for (int i = 0; i < m; ++i) acc += f.f(c, i) * f.b(b, i) * w[i];
      x(b, o1 + c) = acc;
      x(o1 + c, b) = -acc;
    }
    for (int c = 0; c < s2; ++c) {  // P
      double acc = 0.0;
      for (int i = 0; i < m; ++i) acc += f.a(b, i) * f.e(c, i) * w[i];
      x(b, o2 + c) = acc;
      x(o2 + c, b) = -acc;
    }
    for (int c = 0; c < s3; ++c) {
      x(b, o3 + c) = f.c(c, b);
      x(o3 + c, b) = -f.c(c, b);
    }
  }
  for (int b = 0; b < s1; ++b)
    for (int c = 0; c < s2; ++c) {
      x(o1 + b, o2 + c) = -f.h(b, c);
      x(o2 + c, o1 + b) = f.h(b, c);
    }
  const long e = static_cast<long>(n1) * (n1 - 1) / 2 + static_cast<long>(nr) * (nr + 1) / 2 +
                 static_cast<long>(n2 - nl) * (n2 - nl + 1) / 2;
  r.formula = parity_sign(e) * factorial(nl) * factorial(nr) * (d == 0 ? 1.0 : pfaffian(x));
  r.residual = std::abs(r.brute - r.formula) / std::max(scale, 1e-300);
  if (scale == 0.0) r.residual = std::abs(r.formula);
  return r;
}

}  // namespace wrmt
