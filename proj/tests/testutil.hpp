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

#include <vector>

#include "qfiprobe/channels.hpp"
#include "qfiprobe/oracle.hpp"
#include "qfiprobe/rng.hpp"

namespace testutil {

using namespace qfiprobe;

inline Matrix random_complex(int rows, int cols, SplitMix64& rng) {
    Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = Complex(rng.next_normal(), rng.next_normal());
        }
    }
    return m;
}

inline Matrix random_hermitian(int n, SplitMix64& rng) {
    const Matrix g = random_complex(n, n, rng);
    return ((g + g.adjoint()) / 2.0).eval();
}

inline DensityMatrix random_density(int n, SplitMix64& rng) {
    const Matrix g = random_complex(n, n, rng);
    Matrix rho = g * g.adjoint();
    rho /= rho.trace().real();
    return DensityMatrix(((rho + rho.adjoint()) / 2.0).eval());
}

/// Random unitary: eigenvectors of a random Hermitian matrix.
inline Matrix random_unitary(int n, SplitMix64& rng) {
    return hermitian_eig(random_hermitian(n, rng)).eigenvectors;
}

/// Random POVM with `k` full-rank elements: Wishart blocks G G* rescaled by
/// the inverse square root of their sum.
inline Povm random_povm(int dim, int k, SplitMix64& rng) {
    std::vector<Matrix> raw;
    raw.reserve(static_cast<std::size_t>(k));
    Matrix sum = Matrix::Zero(dim, dim);
    for (int e = 0; e < k; ++e) {
        const Matrix g = random_complex(dim, dim, rng);
        raw.push_back(g * g.adjoint());
        sum += raw.back();
    }
    const HermitianEig eig = hermitian_eig(sum);
    Matrix inv_sqrt = Matrix::Zero(dim, dim);
    for (int i = 0; i < dim; ++i) {
        inv_sqrt += eig.eigenvectors.col(i) * eig.eigenvectors.col(i).adjoint() /
                    std::sqrt(eig.eigenvalues(i));
    }
    std::vector<Matrix> elements;
    elements.reserve(raw.size());
    for (const Matrix& block : raw) {
        const Matrix e = inv_sqrt * block * inv_sqrt;
        elements.push_back(((e + e.adjoint()) / 2.0).eval());
    }
    return Povm(std::move(elements));
}

/// Traces out the first tensor factor of a (da*db) x (da*db) matrix.
inline Matrix partial_trace_first(const Matrix& m, int da, int db) {
    Matrix out = Matrix::Zero(db, db);
    for (int i = 0; i < da; ++i) {
        out += m.block(i * db, i * db, db, db);
    }
    return out;
}

/// Traces out the second tensor factor.
inline Matrix partial_trace_second(const Matrix& m, int da, int db) {
    Matrix out = Matrix::Zero(da, da);
    for (int i = 0; i < da; ++i) {
        for (int j = 0; j < da; ++j) {
            Complex sum = 0.0;
            for (int k = 0; k < db; ++k) {
                sum += m(i * db + k, j * db + k);
            }
            out(i, j) = sum;
        }
    }
    return out;
}

/// Central finite difference of the family state.
inline Matrix finite_diff_drho(const ParamFamily& fam, double theta, double step) {
    return ((fam.rho(theta + step).matrix() - fam.rho(theta - step).matrix()) /
            (2.0 * step))
        .eval();
}

}  // namespace testutil
