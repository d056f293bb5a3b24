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

#include "qfiprobe/oracle.hpp"

#include <cmath>
#include <utility>

#include "qfiprobe/parallel.hpp"

namespace qfiprobe {

Povm::Povm(std::vector<Matrix> elements) : elements_(std::move(elements)) {
    if (elements_.empty()) {
        throw Error("Povm: need at least one element");
    }
    const Eigen::Index dim = elements_.front().rows();
    Matrix sum = Matrix::Zero(dim, dim);
    for (const Matrix& element : elements_) {
        if (element.rows() != dim || element.cols() != dim) {
            throw Error("Povm: elements must be square matrices of equal dimension");
        }
        if (!is_hermitian(element)) {
            throw NonHermitianError("Povm: element is not Hermitian");
        }
        Eigen::SelfAdjointEigenSolver<Matrix> solver(element, Eigen::EigenvaluesOnly);
        if (solver.info() != Eigen::Success) {
            throw Error("Povm: eigenvalue check did not converge");
        }
        if (solver.eigenvalues().minCoeff() < -kHermitianTol) {
            throw Error("Povm: element has a negative eigenvalue");
        }
        sum += element;
    }
    if (max_abs(sum - Matrix::Identity(dim, dim)) > kHermitianTol) {
        throw Error("Povm: elements do not sum to the identity");
    }
}

RealVector Povm::probabilities(const DensityMatrix& rho) const {
    if (rho.dim() != dim()) {
        throw Error("Povm: state dimension does not match the measurement");
    }
    RealVector probs(static_cast<Eigen::Index>(size()));
    for (std::size_t k = 0; k < size(); ++k) {
        probs(static_cast<Eigen::Index>(k)) =
            (elements_[k] * rho.matrix()).trace().real();
    }
    return probs;
}

double qfi_numeric(const ParamFamily& fam, double theta) {
    const DensityMatrix rho = fam.rho(theta);
    const Matrix sld = solve_sld(rho.matrix(), fam.drho(theta));
    const Complex value = (rho.matrix() * sld * sld).trace();
    if (std::abs(value.imag()) > kHermitianTol) {
        throw Error("qfi_numeric: tr(rho L^2) has a non-real part");
    }
    return value.real();
}

Povm optimal_projectors(const SchemeSpec& spec) {
    spec.validate();
    if (spec.kind == Scheme::Partial) {
        throw UnsupportedCombinationError(
            "optimal_projectors: no parameter-independent optimal measurement for "
            "partial entanglement; use sld_eigenbasis_projectors");
    }
    const int dim = spec.output_dim();
    Matrix projector;
    if (spec.kind == Scheme::O) {
        projector = Matrix::Zero(dim, dim);
        projector(0, 0) = 1.0;
    } else {
        projector = max_entangled_state(spec.d).matrix();
    }
    Matrix complement = Matrix::Identity(dim, dim) - projector;
    return Povm({std::move(projector), std::move(complement)});
}

Povm eigenbasis_projectors(const DensityMatrix& rho) {
    const HermitianEig eig = hermitian_eig(rho.matrix());
    std::vector<Matrix> projectors;
    projectors.reserve(static_cast<std::size_t>(rho.dim()));
    for (int k = 0; k < rho.dim(); ++k) {
        const Vector v = eig.eigenvectors.col(k);
        projectors.push_back(v * v.adjoint());
    }
    return Povm(std::move(projectors));
}

Povm sld_eigenbasis_projectors(const ParamFamily& fam, double theta) {
    const Matrix sld = solve_sld(fam.rho(theta).matrix(), fam.drho(theta));
    const HermitianEig eig = hermitian_eig(sld);
    std::vector<Matrix> projectors;
    projectors.reserve(static_cast<std::size_t>(sld.rows()));
    for (Eigen::Index k = 0; k < sld.rows(); ++k) {
        const Vector v = eig.eigenvectors.col(k);
        projectors.push_back(v * v.adjoint());
    }
    return Povm(std::move(projectors));
}

double classical_fisher(const Povm& povm, const ParamFamily& fam, double theta) {
    if (povm.dim() != fam.dim()) {
        throw Error("classical_fisher: measurement dimension does not match the family");
    }
    const DensityMatrix rho = fam.rho(theta);
    const Matrix drho = fam.drho(theta);
    double info = 0.0;
    for (const Matrix& element : povm.elements()) {
        const double p = (element * rho.matrix()).trace().real();
        const double dp = (element * drho).trace().real();
        if (p <= kProbFloor) {
            if (std::abs(dp) > kDprobFloor) {
                throw DegenerateOutcomeError(
                    "classical_fisher: outcome probability vanishes with nonzero "
                    "derivative");
            }
            continue;
        }
        info += dp * dp / p;
    }
    return info;
}

std::vector<std::int64_t> sample_outcomes(const Povm& povm, const DensityMatrix& rho,
                                          std::int64_t n, std::uint64_t seed) {
    if (n < 0) {
        throw Error("sample_outcomes: sample count must be nonnegative");
    }
    const RealVector probs = povm.probabilities(rho);
    const std::size_t n_outcomes = povm.size();
    std::vector<double> cumulative(n_outcomes);
    double running = 0.0;
    for (std::size_t k = 0; k < n_outcomes; ++k) {
        running += std::max(0.0, probs(static_cast<Eigen::Index>(k)));
        cumulative[k] = running;
    }

    std::vector<std::int64_t> counts(n_outcomes, 0);
    SplitMix64 rng(seed);
    for (std::int64_t shot = 0; shot < n; ++shot) {
        const double u = rng.next_double() * running;
        std::size_t k = 0;
        while (k + 1 < n_outcomes && u >= cumulative[k]) {
            ++k;
        }
        ++counts[k];
    }
    return counts;
}

double mle_theta(const std::vector<std::int64_t>& counts, const SchemeSpec& spec) {
    spec.validate();
    if (spec.kind == Scheme::Partial) {
        throw UnsupportedCombinationError(
            "mle_theta: no two-outcome estimator for partial entanglement");
    }
    if (counts.size() != 2) {
        throw Error("mle_theta: expected counts for a two-outcome measurement");
    }
    const std::int64_t total = counts[0] + counts[1];
    if (total <= 0) {
        throw Error("mle_theta: no samples");
    }

    const int dim = spec.output_dim();
    const double p0 = static_cast<double>(counts[0]) / static_cast<double>(total);
    const double h = std::clamp((dim * p0 - 1.0) / (dim - 1.0), 0.0, 1.0);

    switch (spec.kind) {
        case Scheme::O:
        case Scheme::E:
            return std::pow(h, 1.0 / spec.n);
        case Scheme::B:
            return std::pow(h, 1.0 / (2.0 * spec.n));
        case Scheme::Eeta:
            return std::clamp(h / spec.eta, 0.0, 1.0);
        case Scheme::Partial:
            break;
    }
    throw Error("mle_theta: unknown scheme");
}

CrbReport crb_experiment(const SchemeSpec& spec, double theta, std::int64_t n_shots,
                         int n_trials, std::uint64_t seed) {
    spec.validate();
    if (theta < 0.2 || theta > 0.8) {
        throw ThetaOutOfRangeError(
            "crb_experiment: theta must lie in [0.2, 0.8] to keep the estimator "
            "bias negligible");
    }
    if (n_shots < 1000) {
        throw Error("crb_experiment: need at least 1000 shots per trial");
    }
    if (n_trials < 1) {
        throw Error("crb_experiment: need at least one trial");
    }

    const ParamFamily fam = family(spec);
    const DensityMatrix rho = fam.rho(theta);
    const Povm povm = optimal_projectors(spec);
    const double j_per_shot = qfi_scheme(spec, theta).j_per_shot();

    std::vector<double> sq_errors(static_cast<std::size_t>(n_trials), 0.0);
    detail::parallel_for(0, n_trials, [&](std::int64_t trial) {
        const auto counts =
            sample_outcomes(povm, rho, n_shots, seed + static_cast<std::uint64_t>(trial));
        const double estimate = mle_theta(counts, spec);
        const double err = estimate - theta;
        sq_errors[static_cast<std::size_t>(trial)] = err * err;
    });

    CrbReport report;
    report.theta_true = theta;
    report.n_shots = n_shots;
    report.n_trials = n_trials;
    double sum = 0.0;
    for (const double sq : sq_errors) {
        sum += sq;
    }
    report.mse = sum / n_trials;
    report.crb = 1.0 / (static_cast<double>(n_shots) * j_per_shot);
    report.ratio = report.mse / report.crb;
    return report;
}

SchmidtVector random_schmidt(int d, SplitMix64& rng, double min_coeff) {
    if (d < 2) {
        throw Error("random_schmidt: dimension must be at least 2");
    }
    if (min_coeff < 0.0 || min_coeff >= 1.0 / std::sqrt(static_cast<double>(d))) {
        throw Error("random_schmidt: min_coeff must lie in [0, 1/sqrt(d))");
    }
    for (int attempt = 0; attempt < 100000; ++attempt) {
        RealVector coeffs(d);
        for (int i = 0; i < d; ++i) {
            coeffs(i) = std::abs(rng.next_normal());
        }
        const double norm = coeffs.norm();
        if (norm < 1e-12) {
            continue;
        }
        coeffs /= norm;
        if (coeffs.minCoeff() >= min_coeff) {
            return SchmidtVector(std::move(coeffs));
        }
    }
    throw Error("random_schmidt: rejection sampling did not terminate");
}

}  // namespace qfiprobe
