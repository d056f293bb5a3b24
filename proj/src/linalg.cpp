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

#include "qfiprobe/linalg.hpp"

#include <cmath>

#include <unsupported/Eigen/KroneckerProduct>

namespace qfiprobe {

double max_abs(const Matrix& m) {
    if (m.size() == 0) {
        return 0.0;
    }
    return m.cwiseAbs().maxCoeff();
}

bool is_hermitian(const Matrix& m, double tol) {
    if (m.rows() != m.cols()) {
        return false;
    }
    return max_abs(m - m.adjoint()) <= tol;
}

HermitianEig hermitian_eig(const Matrix& m) {
    if (m.rows() != m.cols()) {
        throw NonHermitianError("hermitian_eig: matrix is not square");
    }
    if (!is_hermitian(m)) {
        throw NonHermitianError("hermitian_eig: matrix is not Hermitian within tolerance");
    }
    // Symmetrize before handing off to the solver so that tolerated asymmetry
    // at the 1e-10 level cannot leak into the eigenvectors.
    Eigen::SelfAdjointEigenSolver<Matrix> solver((m + m.adjoint()) / 2.0);
    if (solver.info() != Eigen::Success) {
        throw Error("hermitian_eig: eigendecomposition did not converge");
    }

    HermitianEig result{solver.eigenvalues(), solver.eigenvectors()};
    const Eigen::Index n = result.eigenvectors.rows();
    for (Eigen::Index col = 0; col < n; ++col) {
        for (Eigen::Index row = 0; row < n; ++row) {
            const Complex entry = result.eigenvectors(row, col);
            if (std::abs(entry) > 1e-12) {
                result.eigenvectors.col(col) *= std::conj(entry) / std::abs(entry);
                break;
            }
        }
    }
    return result;
}

Matrix kron(const Matrix& a, const Matrix& b) {
    return Eigen::kroneckerProduct(a, b).eval();
}

Matrix solve_sld(const Matrix& rho, const Matrix& drho) {
    if (rho.rows() != rho.cols() || drho.rows() != drho.cols() || rho.rows() != drho.rows()) {
        throw Error("solve_sld: rho and drho must be square matrices of equal dimension");
    }
    if (!is_hermitian(rho)) {
        throw NonHermitianError("solve_sld: rho is not Hermitian");
    }
    if (!is_hermitian(drho)) {
        throw NonHermitianError("solve_sld: drho is not Hermitian");
    }
    if (std::abs(rho.trace() - Complex(1.0, 0.0)) > kHermitianTol) {
        throw Error("solve_sld: rho does not have unit trace");
    }
    if (std::abs(drho.trace()) > kHermitianTol) {
        throw Error("solve_sld: drho is not traceless");
    }

    const HermitianEig eig = hermitian_eig(rho);
    if (eig.eigenvalues.minCoeff() < -kHermitianTol) {
        throw Error("solve_sld: rho has a negative eigenvalue");
    }

    const Eigen::Index n = rho.rows();
    const Matrix drho_t = eig.eigenvectors.adjoint() * drho * eig.eigenvectors;
    Matrix sld_t = Matrix::Zero(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const double denom = eig.eigenvalues(i) + eig.eigenvalues(j);
            if (denom <= kNullspaceEps) {
                if (std::abs(drho_t(i, j)) > kNullspaceEps) {
                    throw InconsistentDerivativeError(
                        "solve_sld: drho acts outside the support of rho");
                }
                continue;
            }
            sld_t(i, j) = 2.0 * drho_t(i, j) / denom;
            sld_t(j, i) = std::conj(sld_t(i, j));
        }
    }

    const Matrix sld = eig.eigenvectors * sld_t * eig.eigenvectors.adjoint();
    return ((sld + sld.adjoint()) / 2.0).eval();
}

}  // namespace qfiprobe
