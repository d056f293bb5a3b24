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

#include <cstdint>
#include <vector>

#include "qfiprobe/qfi_closed.hpp"
#include "qfiprobe/rng.hpp"

namespace qfiprobe {

/// Outcome probabilities below this are treated as zero when accumulating
/// classical Fisher information.
inline constexpr double kProbFloor = 1e-14;

/// Probability derivatives up to this magnitude may accompany a vanishing
/// probability without raising DegenerateOutcomeError.
inline constexpr double kDprobFloor = 1e-12;

/// A positive-operator-valued measure: Hermitian positive semidefinite
/// elements summing to the identity.
class Povm {
  public:
    explicit Povm(std::vector<Matrix> elements);

    const std::vector<Matrix>& elements() const { return elements_; }
    std::size_t size() const { return elements_.size(); }
    int dim() const { return static_cast<int>(elements_.front().rows()); }

    /// Born-rule outcome distribution tr(E_k rho).
    RealVector probabilities(const DensityMatrix& rho) const;

  private:
    std::vector<Matrix> elements_;
};

/// Fisher information computed from the state family alone, with no use of
/// closed-form expressions: solves the score-operator equation and returns
/// tr(rho L^2).  This is the reference the closed forms are validated
/// against.
double qfi_numeric(const ParamFamily& fam, double theta);

/// The two-outcome measurement {P, 1 - P} that attains the closed-form
/// information for the scheme at every channel parameter: P projects onto
/// the probe state (the first basis vector for O, the entangled input state
/// otherwise).
///
/// @throws UnsupportedCombinationError for Partial, whose optimal
///     measurement depends on theta; use sld_eigenbasis_projectors.
Povm optimal_projectors(const SchemeSpec& spec);

/// Rank-one projectors onto the eigenbasis of rho.
Povm eigenbasis_projectors(const DensityMatrix& rho);

/// Rank-one projectors onto the eigenbasis of the score operator at theta.
/// This measurement attains the Fisher information of the family at theta.
Povm sld_eigenbasis_projectors(const ParamFamily& fam, double theta);

/// Classical Fisher information sum_k (d p_k)^2 / p_k of the outcome
/// distribution of `povm` on the family at theta.
///
/// @throws DegenerateOutcomeError if an outcome probability vanishes while
///     its derivative does not.
double classical_fisher(const Povm& povm, const ParamFamily& fam, double theta);

/// Draws n outcomes from the Born distribution of `povm` on `rho` and
/// returns per-outcome counts.  Identical (povm, rho, n, seed) inputs give
/// identical counts on every platform.
std::vector<std::int64_t> sample_outcomes(const Povm& povm, const DensityMatrix& rho,
                                          std::int64_t n, std::uint64_t seed);

/// Maximum-likelihood estimate of theta from two-outcome counts of an
/// optimal_projectors measurement: inverts the Born probability through the
/// scheme's mixing function, clamping to the physical range.
double mle_theta(const std::vector<std::int64_t>& counts, const SchemeSpec& spec);

struct CrbReport {
    double theta_true = 0.0;
    std::int64_t n_shots = 0;
    int n_trials = 0;
    double mse = 0.0;   ///< mean squared error of the estimator
    double crb = 0.0;   ///< 1 / (n_shots * J_per_shot)
    double ratio = 0.0; ///< mse / crb
};

/// Monte Carlo check that the estimator variance reaches the Cramer-Rao
/// bound: repeats `n_trials` independent experiments of `n_shots` optimal
/// measurements each and compares the observed mean squared error against
/// 1/(n_shots J).  Trials run concurrently; trial t draws its samples from
/// seed + t, so results are independent of scheduling.
///
/// @throws ThetaOutOfRangeError outside [0.2, 0.8], where the estimator
///     bias is not negligible at these sample sizes.
/// @throws Error for n_shots < 1000 or n_trials < 1.
CrbReport crb_experiment(const SchemeSpec& spec, double theta, std::int64_t n_shots,
                         int n_trials, std::uint64_t seed);

/// Uniform-like random Schmidt vector: takes |N(0,1)| coefficients,
/// normalizes, and resamples until every coefficient is at least min_coeff.
SchmidtVector random_schmidt(int d, SplitMix64& rng, double min_coeff = 0.01);

}  // namespace qfiprobe
