// Copyright 2026 The qfi-probe Authors
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

#include "qfiprobe/errors.hpp"

namespace qfiprobe {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;
using RealVector = Eigen::VectorXd;

/// Tolerance for Hermiticity / unit-trace checks on operators.
inline constexpr double kHermitianTol = 1e-10;

/// Eigenvalue sums below this are treated as a null-space direction when
/// solving the score-operator equation.
inline constexpr double kNullspaceEps = 1e-12;

/// Largest entry magnitude, max_ij |m_ij|.
double max_abs(const Matrix& m);

bool is_hermitian(const Matrix& m, double tol = kHermitianTol);

struct HermitianEig {
    RealVector eigenvalues;  ///< ascending order
    Matrix eigenvectors;     ///< orthonormal columns matching `eigenvalues`
};

/// Eigendecomposition of a Hermitian matrix.
///
/// Column phases are fixed so that the first entry of each eigenvector with
/// magnitude above 1e-12 is real and positive, making repeated decompositions
/// of the same matrix bit-stable.
///
/// @throws NonHermitianError if `m` is not Hermitian within #kHermitianTol.
HermitianEig hermitian_eig(const Matrix& m);

/// Kronecker product a (x) b.
Matrix kron(const Matrix& a, const Matrix& b);

/// Solves the score-operator (symmetric logarithmic derivative) equation
///
///     (L rho + rho L) / 2 = drho
///
/// in the eigenbasis of rho: with rho = V diag(l) V*, the transformed
/// equation has the entrywise solution Lt_ij = 2 (V* drho V)_ij / (l_i + l_j).
/// Entries with l_i + l_j <= #kNullspaceEps are set to zero; they lie outside
/// the support of rho and carry no information.
///
/// @throws NonHermitianError if rho or drho is not Hermitian.
/// @throws Error if rho is not a unit-trace positive semidefinite matrix or
///     if tr(drho) != 0 within #kHermitianTol.
/// @throws InconsistentDerivativeError if drho has a matrix element larger
///     than #kNullspaceEps between null-space directions of rho (the family
///     leaves the support of rho and the Fisher information diverges).
Matrix solve_sld(const Matrix& rho, const Matrix& drho);

}  // namespace qfiprobe
