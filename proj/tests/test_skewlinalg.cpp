// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "wrmt/skewlinalg.hpp"

#ifdef WRMT_HAVE_EIGEN
#include <Eigen/Dense>
#endif

using namespace wrmt;
using doctest::Approx;

TEST_CASE("small pfaffians in closed form") {
  RMatrix a(2, 2);
  a(0, 1) = 3.0;
  a(1, 0) = -3.0;
  CHECK(pfaffian(a) == Approx(3.0));
  std::mt19937_64 rng(5);
  const RMatrix b = random_skew(4, rng);
  const double ref = b(0, 1) * b(2, 3) - b(0, 2) * b(1, 3) + b(0, 3) * b(1, 2);
  CHECK(pfaffian(b) == Approx(ref).epsilon(1e-13));
  CHECK(pfaffian_expand(b) == Approx(ref).epsilon(1e-13));
  CHECK(pfaffian(RMatrix(0, 0)) == 1.0);
}

TEST_CASE("pfaffian input checks") {
  CHECK_THROWS(pfaffian(RMatrix(3, 3)));
  RMatrix ns(2, 2);
  ns(0, 1) = 1.0;
  ns(1, 0) = 1.0;
  CHECK_THROWS(pfaffian(ns));
  CHECK_THROWS(pfaffian(RMatrix(2, 3)));
}

TEST_CASE("pf^2 = det over random skew matrices") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    const int dim = 2 * (1 + t % 6);
    const RMatrix a = random_skew(dim, rng);
    const double pf = pfaffian(a), det = determinant(a);
    CHECK(pf * pf == Approx(det).epsilon(1e-10));
  }
}

TEST_CASE("pfaffian is multiplicative under congruence") {
  // Pf(B A B^T) = det(B) Pf(A)
  std::mt19937_64 rng(12);
  for (int dim : {2, 4, 6, 8}) {
    const RMatrix a = random_skew(dim, rng), b = random_matrix(dim, dim, rng);
    CHECK(pfaffian(b * a * b.transpose()) == Approx(determinant(b) * pfaffian(a)).epsilon(1e-10));
  }
}

TEST_CASE("complex pfaffian") {
  std::mt19937_64 rng(13);
  const RMatrix re = random_skew(6, rng), im = random_skew(6, rng);
  CMatrix c(6, 6);
  for (int i = 0; i < 6; ++i)
    for (int j = 0; j < 6; ++j) c(i, j) = {re(i, j), im(i, j)};
  const std::complex<double> pf = pfaffian(c), det = determinant(c);
  CHECK(std::abs(pf * pf - det) <= 1e-10 * std::abs(det));
  CHECK(std::abs(pf - pfaffian_expand(c)) <= 1e-10 * std::abs(pf));
}

TEST_CASE("schur complement identity on random partitions") {
  std::mt19937_64 rng(14);
  std::uniform_int_distribution<int> half(1, 3);
  for (int t = 0; t < 50; ++t) {
    const int p = 2 * half(rng), q = 2 * half(rng);
    const SchurResult<double> s = pfaffian_schur(random_skew(p, rng), random_matrix(p, q, rng), random_skew(q, rng));
    CHECK(s.direct == Approx(s.factored).epsilon(1e-10));
  }
}

TEST_CASE("inverse") {
  std::mt19937_64 rng(15);
  const RMatrix a = random_matrix(5, 5, rng);
  const RMatrix id = a * inverse(a);
  for (int i = 0; i < 5; ++i)
    for (int j = 0; j < 5; ++j) CHECK(id(i, j) == Approx(i == j ? 1.0 : 0.0).scale(1.0).epsilon(1e-12));
  CHECK_THROWS(inverse(RMatrix(2, 2)));
}

TEST_CASE("de Bruijn pfaffian theorem on discrete measures") {
  std::mt19937_64 rng(16);
  for (auto [m, n1, n2, n3] : {std::array{3, 1, 1, 1}, std::array{4, 2, 3, 1}, std::array{4, 3, 4, 2}, std::array{5, 2, 2, 2}}) {
    DiscreteMeasure dm;
    for (int i = 0; i < m; ++i) dm.masses.push_back(0.3 + 0.2 * i);
    const DeBruijnResult r = debruijn_pfaffian_check(dm, n1, n2, n3, random_pfaffian_data(m, n1, n2, n3, rng));
    CHECK(r.residual <= 1e-12);
    CHECK(std::abs(r.brute) > 0.0);
  }
}

TEST_CASE("de Bruijn determinant theorem on discrete measures") {
  std::mt19937_64 rng(17);
  for (auto [m, n1, n2, nr, nl] : {std::array{3, 1, 1, 0, 1}, std::array{3, 2, 2, 1, 1}, std::array{4, 3, 3, 1, 2}, std::array{3, 4, 2, 1, 1}}) {
    DiscreteMeasure dm;
    for (int i = 0; i < m; ++i) dm.masses.push_back(0.5 + 0.1 * i);
    const DeBruijnResult r =
        debruijn_determinant_check(dm, n1, n2, nr, nl, random_determinant_data(m, n1, n2, nr, nl, rng));
    CHECK(r.residual <= 1e-12);
  }
}

#ifdef WRMT_HAVE_EIGEN
TEST_CASE("determinant against Eigen") {
  std::mt19937_64 rng(18);
  for (int dim = 1; dim <= 10; ++dim) {
    const RMatrix a = random_matrix(dim, dim, rng);
    Eigen::MatrixXd e(dim, dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) e(i, j) = a(i, j);
    CHECK(determinant(a) == Approx(e.determinant()).epsilon(1e-11));
  }
}
#endif
