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

#include <functional>
#include <optional>
#include <string>
#include <string_view>

#include "qfiprobe/linalg.hpp"

namespace qfiprobe {

/// Tolerance for unit trace / positivity of density matrices.
inline constexpr double kDensityTol = 1e-10;

/// Tolerance for the normalization of Schmidt coefficient vectors.
inline constexpr double kSchmidtNormTol = 1e-12;

/// A validated density matrix (Hermitian, unit trace, positive semidefinite).
class DensityMatrix {
  public:
    explicit DensityMatrix(Matrix matrix);

    int dim() const { return static_cast<int>(matrix_.rows()); }
    const Matrix& matrix() const { return matrix_; }

  private:
    Matrix matrix_;
};

/// Schmidt coefficients (psi_1, ..., psi_d) of a bipartite pure state
/// sum_i psi_i |ii>.  Entries are nonnegative and the squares sum to one.
class SchmidtVector {
  public:
    /// @throws NotNormalizedError if an entry is negative or the squared
    ///     norm differs from 1 by more than #kSchmidtNormTol.
    /// @throws Error if fewer than two coefficients are given.
    explicit SchmidtVector(RealVector coeffs);

    /// (1, ..., 1) / sqrt(d): the maximally entangled state.
    static SchmidtVector maximal(int d);

    /// (1, 0, ..., 0): a product state.
    static SchmidtVector unentangled(int d);

    int dim() const { return static_cast<int>(coeffs_.size()); }
    const RealVector& coeffs() const { return coeffs_; }
    double operator[](int i) const { return coeffs_(i); }

  private:
    RealVector coeffs_;
};

/// Probing schemes for the depolarizing channel.
///
///  - O:       unentangled probe through n sequential channel uses
///  - E:       probe entangled with a noiseless ancilla, n sequential uses
///  - B:       both halves of an entangled pair through n uses each
///  - Eeta:    entangled probe whose ancilla sits in its own depolarizing
///             channel of fixed strength eta (single use)
///  - Partial: partially entangled pure probe, given by its Schmidt
///             coefficients (single use)
enum class Scheme { O, E, B, Eeta, Partial };

std::string to_string(Scheme scheme);
std::optional<Scheme> scheme_from_string(std::string_view name);

/// A fully specified probing configuration.
struct SchemeSpec {
    Scheme kind = Scheme::O;
    int d = 2;        ///< channel dimension, >= 2
    int n = 1;        ///< sequential channel uses (O, E, B only), >= 1
    double eta = 1.0; ///< ancilla channel parameter for Eeta, in (0, 1]
    std::optional<SchmidtVector> psi;  ///< Schmidt coefficients for Partial

    static SchemeSpec make(Scheme kind, int d, int n = 1);
    static SchemeSpec with_eta(int d, double eta);
    static SchemeSpec with_psi(SchmidtVector psi);

    /// @throws Error / ThetaOutOfRangeError / UnsupportedCombinationError on
    ///     parameters outside the ranges documented on the fields.
    void validate() const;

    /// Hilbert space dimension of the output state: d for O, d^2 otherwise.
    int output_dim() const;

    /// Channel invocations consumed by one prepared probe: n for O and E,
    /// 2n for B, 1 for Eeta and Partial.
    int channel_uses_per_shot() const;
};

/// Closed interval of channel parameters on which a state family is defined.
struct ThetaInterval {
    double lo = 0.01;
    double hi = 0.99;

    bool contains(double theta) const { return theta >= lo && theta <= hi; }
};

/// One-parameter family of output states of the form
///
///     rho(theta) = (1 - h(theta)) * mixed + h(theta) * sigma,
///
/// with derivative drho = h'(theta) * (sigma - mixed).  Every probing scheme
/// produces a family of this shape; they differ only in sigma, mixed and the
/// mixing function h.
class ParamFamily {
  public:
    ParamFamily(Matrix sigma, Matrix mixed, std::function<double(double)> h,
                std::function<double(double)> dh, ThetaInterval domain = {});

    int dim() const { return static_cast<int>(sigma_.rows()); }
    const ThetaInterval& domain() const { return domain_; }

    double h(double theta) const;
    double dh(double theta) const;

    /// @throws ThetaOutOfRangeError outside the domain.
    DensityMatrix rho(double theta) const;
    Matrix drho(double theta) const;

  private:
    void check_domain(double theta) const;

    Matrix sigma_;
    Matrix mixed_;
    std::function<double(double)> h_;
    std::function<double(double)> dh_;
    ThetaInterval domain_;
};

/// Applies the depolarizing channel: (1 - theta) * I/d + theta * sigma.
/// Here theta may take any value in [0, 1].
DensityMatrix depolarize(const DensityMatrix& sigma, double theta);

/// |mu><mu| with |mu> = sum_i |ii> / sqrt(d) on the d*d-dimensional space.
DensityMatrix max_entangled_state(int d);

/// |psi><psi| with |psi> = sum_i psi_i |ii>.
DensityMatrix schmidt_state(const SchmidtVector& psi);

/// Builds the output-state family of a probing scheme.
///
/// The mixing functions are h = theta^n (O, E), theta^(2n) (B),
/// eta * theta (Eeta) and theta (Partial).  The mixed part is I/output_dim
/// except for Partial, where the ancilla keeps the marginal
/// D = diag(psi_i^2) and the mixed part is (1/d) I_d (x) D.
ParamFamily family(const SchemeSpec& spec, ThetaInterval domain = {});

}  // namespace qfiprobe
