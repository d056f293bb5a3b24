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

#include "qfiprobe/partial_ent.hpp"

#include <cmath>

namespace qfiprobe {

namespace {

void check_theta(double theta, const char* where) {
    if (theta < 0.0 || theta >= 1.0) {
        throw ThetaOutOfRangeError(std::string(where) + ": theta must lie in [0, 1)");
    }
}

void check_positive(const SchmidtVector& psi, const char* where) {
    for (int i = 0; i < psi.dim(); ++i) {
        if (psi[i] <= 0.0) {
            throw ZeroCoefficientError(std::string(where) +
                                       ": all Schmidt coefficients must be positive");
        }
    }
}

}  // namespace

int PairIndex::flat(int i, int j, int d) {
    if (i < 0 || j <= i || j >= d) {
        throw Error("PairIndex: need 0 <= i < j < d");
    }
    return i * d - i * (i + 1) / 2 + (j - i - 1);
}

PairIndex PairIndex::from_flat(int flat, int d) {
    if (flat < 0 || flat >= count(d)) {
        throw Error("PairIndex: flat index out of range");
    }
    int i = 0;
    int row_len = d - 1;
    while (flat >= row_len) {
        flat -= row_len;
        --row_len;
        ++i;
    }
    return PairIndex{i, i + 1 + flat};
}

RealMatrix build_omega(const SchmidtVector& psi) {
    const int d = psi.dim();
    const int m = PairIndex::count(d);
    RealMatrix omega = RealMatrix::Zero(d, m);
    for (int q = 0; q < m; ++q) {
        const PairIndex p = PairIndex::from_flat(q, d);
        omega(p.i, q) = psi[p.j];
        omega(p.j, q) = psi[p.i];
    }
    return omega;
}

PairBlocks build_pair_blocks(const SchmidtVector& psi, double theta) {
    check_theta(theta, "build_pair_blocks");
    const int d = psi.dim();
    const int m = PairIndex::count(d);

    PairBlocks blocks;
    blocks.b.resize(m);
    blocks.j_diag.resize(m);
    for (int q = 0; q < m; ++q) {
        const PairIndex p = PairIndex::from_flat(q, d);
        blocks.b(q) = 2.0 * psi[p.i] * psi[p.j];
        blocks.j_diag(q) = psi[p.i] * psi[p.i] + psi[p.j] * psi[p.j];
    }
    blocks.omega = build_omega(psi);
    blocks.alpha = d * theta / (1.0 - theta + d * theta);
    blocks.z = RealMatrix(blocks.j_diag.asDiagonal()) +
               blocks.alpha * blocks.omega.transpose() * blocks.omega;
    return blocks;
}

double b_quadratic_form(const PairBlocks& blocks) {
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(blocks.z);
    if (solver.info() != Eigen::Success) {
        throw Error("b_quadratic_form: eigendecomposition did not converge");
    }
    const RealVector& evals = solver.eigenvalues();
    const double cutoff = kPinvRelCutoff * evals.cwiseAbs().maxCoeff();
    double value = 0.0;
    for (Eigen::Index k = 0; k < evals.size(); ++k) {
        if (std::abs(evals(k)) > cutoff) {
            const double overlap = solver.eigenvectors().col(k).dot(blocks.b);
            value += overlap * overlap / evals(k);
        }
    }
    return value;
}

double qfi_partial(const SchmidtVector& psi, double theta) {
    check_theta(theta, "qfi_partial");
    const int d = psi.dim();
    const PairBlocks blocks = build_pair_blocks(psi, theta);
    const double r = 1.0 - theta;
    return 1.0 / (r * (theta + 1.0 / (d - 1))) +
           d / (r * (r + d * theta) * (r + d * theta)) * b_quadratic_form(blocks);
}

ScoreDiagonal score_diagonal_direct(const SchmidtVector& psi, double theta) {
    check_theta(theta, "score_diagonal_direct");
    check_positive(psi, "score_diagonal_direct");
    const int d = psi.dim();
    const int m = PairIndex::count(d);
    const PairBlocks blocks = build_pair_blocks(psi, theta);

    const RealVector psi_sq = psi.coeffs().cwiseProduct(psi.coeffs());

    RealMatrix system = RealMatrix::Zero(d + m, d + m);
    system.topLeftCorner(d, d) =
        RealMatrix(((1.0 - theta + d * theta) / d * psi_sq).asDiagonal());
    const RealMatrix s_block =
        theta * RealMatrix(psi.coeffs().asDiagonal()) * blocks.omega;
    system.topRightCorner(d, m) = s_block;
    system.bottomLeftCorner(m, d) = s_block.transpose();
    system.bottomRightCorner(m, m) =
        (1.0 - theta) / d * RealMatrix(blocks.j_diag.asDiagonal()) +
        theta * blocks.omega.transpose() * blocks.omega;

    RealVector rhs(d + m);
    rhs.head(d) = (d - 1.0) / d * psi_sq;
    rhs.tail(m) = blocks.b;

    Eigen::FullPivLU<RealMatrix> lu(system);
    if (!lu.isInvertible()) {
        throw SingularSystemError("score_diagonal_direct: coupled system is singular");
    }
    const RealVector solution = lu.solve(rhs);

    ScoreDiagonal result;
    result.diag = solution.head(d);
    result.weighted_sum = psi_sq.dot(result.diag);
    return result;
}

double score_weighted_sum(const SchmidtVector& psi, double theta) {
    check_theta(theta, "score_weighted_sum");
    const int d = psi.dim();
    const PairBlocks blocks = build_pair_blocks(psi, theta);
    const double r = 1.0 - theta;
    const double s = r + d * theta;
    return (d - 1.0) / s - d * d * theta / (r * s * s) * b_quadratic_form(blocks);
}

RealMatrix pair_coupling_matrix(const SchmidtVector& psi) {
    check_positive(psi, "pair_coupling_matrix");
    const int d = psi.dim();
    RealMatrix a = RealMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) {
        for (int k = 0; k < d; ++k) {
            if (k == i) {
                continue;
            }
            const double denom = psi[i] * psi[i] + psi[k] * psi[k];
            a(i, i) += psi[k] * psi[k] / denom;
            a(i, k) = psi[i] * psi[k] / denom;
        }
    }
    return a;
}

MaxEigReport verify_max_eigenvalue(const SchmidtVector& psi) {
    check_positive(psi, "verify_max_eigenvalue");
    const int d = psi.dim();
    const int m = PairIndex::count(d);
    const PairBlocks blocks = build_pair_blocks(psi, 0.5);

    MaxEigReport report;
    Eigen::SelfAdjointEigenSolver<RealMatrix> solver(pair_coupling_matrix(psi),
                                                     Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error("verify_max_eigenvalue: eigendecomposition did not converge");
    }
    report.lambda_max = solver.eigenvalues().maxCoeff();

    RealVector candidate(m);
    for (int q = 0; q < m; ++q) {
        const PairIndex p = PairIndex::from_flat(q, d);
        candidate(q) = 1.0 / (psi[p.i] * psi[p.j]);
    }
    const RealMatrix action = blocks.j_diag.cwiseInverse().asDiagonal() *
                              (blocks.omega.transpose() * blocks.omega);
    const RealVector residual = action * candidate - (d - 1.0) * candidate;
    report.eigvec_residual =
        residual.cwiseAbs().maxCoeff() / candidate.cwiseAbs().maxCoeff();
    return report;
}

}  // namespace qfiprobe
