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

#include "qfiprobe/channels.hpp"

#include <cmath>
#include <utility>

namespace qfiprobe {

DensityMatrix::DensityMatrix(Matrix matrix) : matrix_(std::move(matrix)) {
    if (matrix_.rows() != matrix_.cols() || matrix_.rows() < 1) {
        throw Error("DensityMatrix: matrix must be square and non-empty");
    }
    if (!is_hermitian(matrix_, kDensityTol)) {
        throw NonHermitianError("DensityMatrix: matrix is not Hermitian");
    }
    if (std::abs(matrix_.trace() - Complex(1.0, 0.0)) > kDensityTol) {
        throw Error("DensityMatrix: trace is not 1");
    }
    Eigen::SelfAdjointEigenSolver<Matrix> solver(matrix_, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw Error("DensityMatrix: eigenvalue check did not converge");
    }
    if (solver.eigenvalues().minCoeff() < -kDensityTol) {
        throw Error("DensityMatrix: matrix has a negative eigenvalue");
    }
}

SchmidtVector::SchmidtVector(RealVector coeffs) : coeffs_(std::move(coeffs)) {
    if (coeffs_.size() < 2) {
        throw Error("SchmidtVector: need at least two coefficients");
    }
    for (Eigen::Index i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_(i) < 0.0) {
            throw NotNormalizedError("SchmidtVector: coefficients must be nonnegative");
        }
    }
    if (std::abs(coeffs_.squaredNorm() - 1.0) > kSchmidtNormTol) {
        throw NotNormalizedError("SchmidtVector: squared coefficients must sum to 1");
    }
}

SchmidtVector SchmidtVector::maximal(int d) {
    if (d < 2) {
        throw Error("SchmidtVector::maximal: dimension must be at least 2");
    }
    return SchmidtVector(RealVector::Constant(d, 1.0 / std::sqrt(static_cast<double>(d))));
}

SchmidtVector SchmidtVector::unentangled(int d) {
    if (d < 2) {
        throw Error("SchmidtVector::unentangled: dimension must be at least 2");
    }
    RealVector coeffs = RealVector::Zero(d);
    coeffs(0) = 1.0;
    return SchmidtVector(std::move(coeffs));
}

std::string to_string(Scheme scheme) {
    switch (scheme) {
        case Scheme::O:
            return "O";
        case Scheme::E:
            return "E";
        case Scheme::B:
            return "B";
        case Scheme::Eeta:
            return "Eeta";
        case Scheme::Partial:
            return "Partial";
    }
    throw Error("to_string: unknown scheme");
}

std::optional<Scheme> scheme_from_string(std::string_view name) {
    if (name == "O") {
        return Scheme::O;
    }
    if (name == "E") {
        return Scheme::E;
    }
    if (name == "B") {
        return Scheme::B;
    }
    if (name == "Eeta") {
        return Scheme::Eeta;
    }
    if (name == "Partial") {
        return Scheme::Partial;
    }
    return std::nullopt;
}

SchemeSpec SchemeSpec::make(Scheme kind, int d, int n) {
    SchemeSpec spec;
    spec.kind = kind;
    spec.d = d;
    spec.n = n;
    spec.validate();
    return spec;
}

SchemeSpec SchemeSpec::with_eta(int d, double eta) {
    SchemeSpec spec;
    spec.kind = Scheme::Eeta;
    spec.d = d;
    spec.eta = eta;
    spec.validate();
    return spec;
}

SchemeSpec SchemeSpec::with_psi(SchmidtVector psi) {
    SchemeSpec spec;
    spec.kind = Scheme::Partial;
    spec.d = psi.dim();
    spec.psi = std::move(psi);
    spec.validate();
    return spec;
}

void SchemeSpec::validate() const {
    if (d < 2) {
        throw Error("SchemeSpec: channel dimension must be at least 2");
    }
    if (n < 1) {
        throw Error("SchemeSpec: number of channel uses must be at least 1");
    }
    if (eta <= 0.0 || eta > 1.0) {
        throw Error("SchemeSpec: eta must lie in (0, 1]");
    }
    if (kind == Scheme::Eeta && n != 1) {
        throw UnsupportedCombinationError(
            "SchemeSpec: ancilla depolarization is defined for a single channel use only");
    }
    if (kind == Scheme::Partial) {
        if (n != 1) {
            throw UnsupportedCombinationError(
                "SchemeSpec: partial entanglement is defined for a single channel use only");
        }
        if (!psi.has_value()) {
            throw Error("SchemeSpec: Partial scheme requires Schmidt coefficients");
        }
        if (psi->dim() != d) {
            throw Error("SchemeSpec: Schmidt vector dimension does not match d");
        }
    } else if (psi.has_value()) {
        throw Error("SchemeSpec: Schmidt coefficients are only meaningful for Partial");
    }
}

int SchemeSpec::output_dim() const {
    return kind == Scheme::O ? d : d * d;
}

int SchemeSpec::channel_uses_per_shot() const {
    switch (kind) {
        case Scheme::O:
        case Scheme::E:
            return n;
        case Scheme::B:
            return 2 * n;
        case Scheme::Eeta:
        case Scheme::Partial:
            return 1;
    }
    throw Error("SchemeSpec: unknown scheme");
}

ParamFamily::ParamFamily(Matrix sigma, Matrix mixed, std::function<double(double)> h,
                         std::function<double(double)> dh, ThetaInterval domain)
    : sigma_(std::move(sigma)),
      mixed_(std::move(mixed)),
      h_(std::move(h)),
      dh_(std::move(dh)),
      domain_(domain) {
    if (sigma_.rows() != sigma_.cols() || sigma_.rows() != mixed_.rows() ||
        mixed_.rows() != mixed_.cols()) {
        throw Error("ParamFamily: sigma and mixed must be square matrices of equal dimension");
    }
    if (!h_ || !dh_) {
        throw Error("ParamFamily: mixing function and derivative must both be set");
    }
    if (domain_.lo > domain_.hi) {
        throw Error("ParamFamily: empty theta domain");
    }
}

void ParamFamily::check_domain(double theta) const {
    if (!domain_.contains(theta)) {
        throw ThetaOutOfRangeError("ParamFamily: theta outside the family domain");
    }
}

double ParamFamily::h(double theta) const {
    check_domain(theta);
    return h_(theta);
}

double ParamFamily::dh(double theta) const {
    check_domain(theta);
    return dh_(theta);
}

DensityMatrix ParamFamily::rho(double theta) const {
    check_domain(theta);
    const double mix = h_(theta);
    return DensityMatrix((1.0 - mix) * mixed_ + mix * sigma_);
}

Matrix ParamFamily::drho(double theta) const {
    check_domain(theta);
    return dh_(theta) * (sigma_ - mixed_);
}

DensityMatrix depolarize(const DensityMatrix& sigma, double theta) {
    if (theta < 0.0 || theta > 1.0) {
        throw ThetaOutOfRangeError("depolarize: theta must lie in [0, 1]");
    }
    const int d = sigma.dim();
    return DensityMatrix((1.0 - theta) / d * Matrix::Identity(d, d) + theta * sigma.matrix());
}

DensityMatrix max_entangled_state(int d) {
    return schmidt_state(SchmidtVector::maximal(d));
}

DensityMatrix schmidt_state(const SchmidtVector& psi) {
    const int d = psi.dim();
    Vector state = Vector::Zero(d * d);
    for (int i = 0; i < d; ++i) {
        state(i * d + i) = psi[i];
    }
    return DensityMatrix(state * state.adjoint());
}

ParamFamily family(const SchemeSpec& spec, ThetaInterval domain) {
    spec.validate();
    const int dim = spec.output_dim();

    const auto power_mix = [](int exponent) {
        return std::pair<std::function<double(double)>, std::function<double(double)>>{
            [exponent](double theta) { return std::pow(theta, exponent); },
            [exponent](double theta) {
                return exponent * std::pow(theta, exponent - 1);
            }};
    };

    switch (spec.kind) {
        case Scheme::O: {
            Matrix sigma = Matrix::Zero(dim, dim);
            sigma(0, 0) = 1.0;
            auto [h, dh] = power_mix(spec.n);
            return ParamFamily(std::move(sigma), Matrix::Identity(dim, dim) / dim,
                               std::move(h), std::move(dh), domain);
        }
        case Scheme::E: {
            auto [h, dh] = power_mix(spec.n);
            return ParamFamily(max_entangled_state(spec.d).matrix(),
                               Matrix::Identity(dim, dim) / dim, std::move(h), std::move(dh),
                               domain);
        }
        case Scheme::B: {
            auto [h, dh] = power_mix(2 * spec.n);
            return ParamFamily(max_entangled_state(spec.d).matrix(),
                               Matrix::Identity(dim, dim) / dim, std::move(h), std::move(dh),
                               domain);
        }
        case Scheme::Eeta: {
            const double eta = spec.eta;
            return ParamFamily(
                max_entangled_state(spec.d).matrix(), Matrix::Identity(dim, dim) / dim,
                [eta](double theta) { return eta * theta; },
                [eta](double /*theta*/) { return eta; }, domain);
        }
        case Scheme::Partial: {
            const SchmidtVector& psi = *spec.psi;
            Matrix marginal = Matrix::Zero(spec.d, spec.d);
            for (int i = 0; i < spec.d; ++i) {
                marginal(i, i) = psi[i] * psi[i];
            }
            Matrix mixed = kron(Matrix::Identity(spec.d, spec.d), marginal) / spec.d;
            return ParamFamily(
                schmidt_state(psi).matrix(), std::move(mixed),
                [](double theta) { return theta; }, [](double /*theta*/) { return 1.0; },
                domain);
        }
    }
    throw Error("family: unknown scheme");
}

}  // namespace qfiprobe
