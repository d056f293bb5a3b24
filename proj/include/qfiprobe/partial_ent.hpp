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

#include "qfiprobe/channels.hpp"

namespace qfiprobe {

/// Output eigenvalues of a singular pair-coupling matrix below
/// 1e-10 * (largest magnitude) are dropped from its pseudo-inverse.
inline constexpr double kPinvRelCutoff = 1e-10;

/// Index pair 0 <= i < j < d and its position in the flat lexicographic
/// ordering (0,1), (0,2), ..., (0,d-1), (1,2), ..., (d-2,d-1).
struct PairIndex {
    int i = 0;
    int j = 1;

    static int count(int d) { return d * (d - 1) / 2; }
    static int flat(int i, int j, int d);
    static PairIndex from_flat(int flat, int d);
};

/// The reduced matrices controlling the pair-coherence sector of a partially
/// entangled probe with Schmidt coefficients psi at channel parameter theta.
/// Pair components are ordered lexicographically as in PairIndex.
struct PairBlocks {
    RealVector b;       ///< b_(ij) = 2 psi_i psi_j
    RealVector j_diag;  ///< J_(ij) = psi_i^2 + psi_j^2
    RealMatrix omega;   ///< d x count(d) coupling matrix, see build_omega
    RealMatrix z;       ///< diag(j_diag) + alpha * omega^T omega
    double alpha = 0.0; ///< d theta / (1 - theta + d theta)
};

/// The d x (d(d-1)/2) matrix whose column for pair (i,j) holds psi_j in row
/// i and psi_i in row j, zero elsewhere.  Its transpose maps the diagonal
/// sector onto the pair sector: omega^T psi = b.
RealMatrix build_omega(const SchmidtVector& psi);

/// @throws ThetaOutOfRangeError for theta outside [0, 1).
PairBlocks build_pair_blocks(const SchmidtVector& psi, double theta);

/// The quadratic form b^T Z^+ b with the pseudo-inverse taken over
/// eigenvalues above #kPinvRelCutoff times the largest magnitude.  Z is
/// singular exactly when some Schmidt coefficients vanish; the discarded
/// directions carry b = 0 as well.
double b_quadratic_form(const PairBlocks& blocks);

/// Fisher information of the partially entangled single-use probe:
///
///     J = 1 / ((1-theta)(theta + 1/(d-1)))
///       + d / ((1-theta)(1 - theta + d theta)^2) * b^T Z^+ b.
///
/// Interpolates between the unentangled value at psi = (1,0,...,0) and the
/// maximally entangled value at psi = (1,...,1)/sqrt(d).
double qfi_partial(const SchmidtVector& psi, double theta);

/// Diagonal entries x_i of the score operator on the |ii> sector, obtained
/// by solving the coupled linear system
///
///     [ R   S  ] [x]   [a]        R = ((1-theta+d theta)/d) diag(psi^2)
///     [ S^T T  ] [y] = [b],       S = theta diag(psi) omega
///                                 T = ((1-theta)/d) diag(j_diag) + theta omega^T omega
///                                 a = ((d-1)/d) psi^2
///
/// directly, without the reduction used by score_weighted_sum.
struct ScoreDiagonal {
    RealVector diag;           ///< x
    double weighted_sum = 0.0; ///< sum_i psi_i^2 x_i
};

/// @throws ZeroCoefficientError unless all Schmidt coefficients are positive.
/// @throws SingularSystemError if the linear system is not invertible.
ScoreDiagonal score_diagonal_direct(const SchmidtVector& psi, double theta);

/// Reduced expression for the weighted sum sum_i psi_i^2 x_i:
///
///     (d-1)/(1-theta+d theta)
///       - d^2 theta / ((1-theta)(1-theta+d theta)^2) * b^T Z^+ b.
double score_weighted_sum(const SchmidtVector& psi, double theta);

/// The symmetric d x d matrix A with entries
///
///     A_ii = sum_{k != i} psi_k^2 / (psi_i^2 + psi_k^2)
///     A_ij = psi_i psi_j / (psi_i^2 + psi_j^2)        (i != j)
///
/// equal to omega diag(j_diag)^-1 omega^T.  Its largest eigenvalue is d - 1
/// for every strictly positive psi, which bounds the entanglement gain.
///
/// @throws ZeroCoefficientError unless all Schmidt coefficients are positive.
RealMatrix pair_coupling_matrix(const SchmidtVector& psi);

struct MaxEigReport {
    double lambda_max = 0.0;      ///< largest eigenvalue of pair_coupling_matrix
    double eigvec_residual = 0.0; ///< relative residual of the known eigenvector
};

/// Checks that d - 1 is the top eigenvalue of the pair coupling matrix and
/// that (1/(psi_i psi_j))_(ij) is the matching eigenvector of
/// diag(j_diag)^-1 omega^T omega.
MaxEigReport verify_max_eigenvalue(const SchmidtVector& psi);

}  // namespace qfiprobe
