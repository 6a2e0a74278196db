// Copyright 2026 The wilsonrmt Authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <vector>

#include "wrmt/poly.hpp"
#include "wrmt/skewlinalg.hpp"

namespace wrmt {

class EigenError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Eigenvalues of a Hermitian matrix in ascending order (cyclic Jacobi).
std::vector<double> hermitian_eigenvalues(const CMatrix& a);

// Eigenvalues of a general complex matrix (Hessenberg reduction followed by
// Wilkinson-shift QR). Throws EigenError past the iteration cap.
std::vector<cplx> general_eigenvalues(const CMatrix& a);

// Unit eigenvector for a computed eigenvalue, by inverse iteration.
std::vector<cplx> eigenvector(const CMatrix& a, cplx lambda);

}  // namespace wrmt
