// Copyright 2026 The sfqopt Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <complex>

#include <Eigen/Dense>

namespace sfqopt {

using Complex = std::complex<double>;

/// Dense complex matrix used for Hamiltonians, propagators, targets and
/// adjoint states. Square N x N unless noted otherwise (projected blocks
/// such as U P are N x E).
using ComplexMatrix = Eigen::MatrixXcd;

/// Frobenius inner product <A, B> = tr(A^H B).
inline Complex frobenius_inner(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a.array().conjugate() * b.array()).sum();
}

/// ||M^H M - I||_F.
inline double unitarity_defect(const ComplexMatrix& m) {
  return (m.adjoint() * m - ComplexMatrix::Identity(m.rows(), m.cols())).norm();
}

/// Matrix exponential. Backed by Eigen's scaling-and-squaring Pade
/// implementation.
ComplexMatrix expm(const ComplexMatrix& m);

}  // namespace sfqopt
