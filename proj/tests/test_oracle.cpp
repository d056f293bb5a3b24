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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qfiprobe/oracle.hpp"

#include "qfiprobe/partial_ent.hpp"
#include "testutil.hpp"

using namespace qfiprobe;

TEST_CASE("score-operator information matches closed forms across schemes") {
    const std::vector<SchemeSpec> specs = {
        SchemeSpec::make(Scheme::O, 2, 1), SchemeSpec::make(Scheme::O, 4, 3),
        SchemeSpec::make(Scheme::E, 3, 2), SchemeSpec::make(Scheme::B, 2, 2),
        SchemeSpec::with_eta(3, 0.8),
    };
    for (const SchemeSpec& spec : specs) {
        const ParamFamily fam = family(spec);
        for (const double theta : {0.1, 0.5, 0.9}) {
            const double closed = qfi_scheme(spec, theta).j_per_shot();
            const double oracle = qfi_numeric(fam, theta);
            CHECK(closed == doctest::Approx(oracle).epsilon(1e-10));
        }
    }
}

TEST_CASE("Povm validates completeness and positivity") {
    const int dim = 3;
    Matrix p = Matrix::Zero(dim, dim);
    p(0, 0) = 1.0;
    CHECK_NOTHROW(Povm({p, Matrix::Identity(dim, dim) - p}));
    CHECK_THROWS_AS(Povm({p, p}), Error);

    Matrix skew = Matrix::Zero(dim, dim);
    skew(0, 1) = 1.0;
    CHECK_THROWS_AS(Povm({skew, Matrix::Identity(dim, dim) - skew}),
                    NonHermitianError);

    Matrix negative = -0.5 * Matrix::Identity(dim, dim);
    CHECK_THROWS_AS(Povm({negative, Matrix::Identity(dim, dim) - negative}), Error);
}

TEST_CASE("optimal projectors attain the information for fixed measurements") {
    const std::vector<SchemeSpec> specs = {
        SchemeSpec::make(Scheme::O, 3, 1), SchemeSpec::make(Scheme::O, 2, 2),
        SchemeSpec::make(Scheme::E, 2, 1), SchemeSpec::make(Scheme::B, 3, 1),
        SchemeSpec::with_eta(2, 0.9),
    };
    for (const SchemeSpec& spec : specs) {
        const ParamFamily fam = family(spec);
        const Povm povm = optimal_projectors(spec);
        for (const double theta : {0.2, 0.5, 0.8}) {
            const double classical = classical_fisher(povm, fam, theta);
            const double quantum = qfi_numeric(fam, theta);
            CHECK(classical == doctest::Approx(quantum).epsilon(1e-9));
        }
    }
    CHECK_THROWS_AS(optimal_projectors(SchemeSpec::with_psi(SchmidtVector::maximal(2))),
                    UnsupportedCombinationError);
}

TEST_CASE("score-operator eigenbasis attains the partial-probe information") {
    RealVector coeffs(3);
    coeffs << 0.7, 0.5, std::sqrt(1.0 - 0.49 - 0.25);
    const SchmidtVector psi(coeffs);
    const ParamFamily fam = family(SchemeSpec::with_psi(psi));
    const double theta = 0.4;

    const double quantum = qfi_numeric(fam, theta);
    const double via_sld =
        classical_fisher(sld_eigenbasis_projectors(fam, theta), fam, theta);
    CHECK(via_sld == doctest::Approx(quantum).epsilon(1e-9));

    // The state eigenbasis is a valid measurement but, because the state and
    // its derivative do not commute here, a strictly weaker one.
    const double via_state =
        classical_fisher(eigenbasis_projectors(fam.rho(theta)), fam, theta);
    CHECK(via_state <= quantum + 1e-10);
    CHECK(via_state < quantum - 1e-4);
}

TEST_CASE("no random measurement exceeds the information bound") {
    SplitMix64 rng(5);
    const std::vector<SchemeSpec> specs = {
        SchemeSpec::make(Scheme::O, 3, 1),
        SchemeSpec::make(Scheme::E, 2, 1),
        SchemeSpec::with_psi(random_schmidt(3, rng, 0.05)),
    };
    for (const SchemeSpec& spec : specs) {
        const ParamFamily fam = family(spec);
        for (const double theta : {0.3, 0.7}) {
            const double quantum = qfi_numeric(fam, theta);
            for (int rep = 0; rep < 20; ++rep) {
                const Povm povm =
                    testutil::random_povm(spec.output_dim(), 3 + rep % 3, rng);
                CHECK(classical_fisher(povm, fam, theta) <= quantum + 1e-9);
            }
        }
    }
}

TEST_CASE("classical_fisher skips flat zero-probability outcomes") {
    const SchemeSpec spec = SchemeSpec::make(Scheme::O, 2);
    const ParamFamily fam = family(spec);

    Matrix p0 = Matrix::Zero(2, 2);
    p0(0, 0) = 1.0;
    Matrix p1 = Matrix::Zero(2, 2);
    p1(1, 1) = 1.0;
    const Matrix zero = Matrix::Zero(2, 2);
    // A zero element contributes probability 0 with derivative 0.
    CHECK_NOTHROW(classical_fisher(Povm({p0, p1, zero}), fam, 0.5));
}

TEST_CASE("sampling is reproducible and follows the Born distribution") {
    const SchemeSpec spec = SchemeSpec::make(Scheme::E, 2);
    const ParamFamily fam = family(spec);
    const DensityMatrix rho = fam.rho(0.5);
    const Povm povm = optimal_projectors(spec);

    const std::int64_t n = 200000;
    const auto counts = sample_outcomes(povm, rho, n, 99);
    const auto again = sample_outcomes(povm, rho, n, 99);
    CHECK(counts == again);
    CHECK(counts[0] + counts[1] == n);

    const RealVector probs = povm.probabilities(rho);
    const double expected = probs(0) * n;
    const double sigma = std::sqrt(n * probs(0) * (1.0 - probs(0)));
    CHECK(std::abs(counts[0] - expected) < 5.0 * sigma);

    const auto other = sample_outcomes(povm, rho, n, 100);
    CHECK(counts != other);
}

TEST_CASE("estimator inverts the mixing function exactly on expected counts") {
    struct Case {
        SchemeSpec spec;
        double theta;
    };
    const std::vector<Case> cases = {
        {SchemeSpec::make(Scheme::O, 2, 1), 0.5},
        {SchemeSpec::make(Scheme::O, 3, 2), 0.6},
        {SchemeSpec::make(Scheme::E, 2, 1), 0.35},
        {SchemeSpec::make(Scheme::B, 2, 1), 0.45},
        {SchemeSpec::with_eta(2, 0.8), 0.5},
    };
    const std::int64_t n = 100000000;
    for (const Case& c : cases) {
        const ParamFamily fam = family(c.spec);
        const Povm povm = optimal_projectors(c.spec);
        const RealVector probs = povm.probabilities(fam.rho(c.theta));
        const auto first = static_cast<std::int64_t>(std::llround(probs(0) * n));
        const double estimate = mle_theta({first, n - first}, c.spec);
        CHECK(estimate == doctest::Approx(c.theta).epsilon(1e-6));
    }
}

TEST_CASE("estimator clamps unphysical frequencies") {
    const SchemeSpec spec = SchemeSpec::make(Scheme::O, 2);
    CHECK(mle_theta({0, 1000}, spec) == 0.0);
    CHECK(mle_theta({1000, 0}, spec) == 1.0);
    CHECK_THROWS_AS(mle_theta({1, 2, 3}, spec), Error);
    CHECK_THROWS_AS(mle_theta({0, 0}, spec), Error);
    CHECK_THROWS_AS(mle_theta({10, 10}, SchemeSpec::with_psi(SchmidtVector::maximal(2))),
                    UnsupportedCombinationError);
}

TEST_CASE("estimator variance approaches the Cramer-Rao bound") {
    const CrbReport report =
        crb_experiment(SchemeSpec::make(Scheme::E, 2), 0.5, 20000, 150, 1234);
    CHECK(report.crb ==
          doctest::Approx(1.0 / (20000.0 *
                                 qfi_scheme(SchemeSpec::make(Scheme::E, 2), 0.5)
                                     .j_per_shot()))
              .epsilon(1e-12));
    CHECK(report.ratio > 0.75);
    CHECK(report.ratio < 1.3);

    const CrbReport again =
        crb_experiment(SchemeSpec::make(Scheme::E, 2), 0.5, 20000, 150, 1234);
    CHECK(report.mse == again.mse);
}

TEST_CASE("crb_experiment validates its inputs") {
    const SchemeSpec spec = SchemeSpec::make(Scheme::O, 2);
    CHECK_THROWS_AS(crb_experiment(spec, 0.1, 10000, 10, 1), ThetaOutOfRangeError);
    CHECK_THROWS_AS(crb_experiment(spec, 0.85, 10000, 10, 1), ThetaOutOfRangeError);
    CHECK_THROWS_AS(crb_experiment(spec, 0.5, 100, 10, 1), Error);
    CHECK_THROWS_AS(crb_experiment(spec, 0.5, 10000, 0, 1), Error);
}

TEST_CASE("random Schmidt vectors respect the floor and are reproducible") {
    SplitMix64 rng(321);
    for (int rep = 0; rep < 30; ++rep) {
        const SchmidtVector psi = random_schmidt(5, rng, 0.05);
        CHECK(psi.coeffs().minCoeff() >= 0.05);
        CHECK(psi.coeffs().squaredNorm() == doctest::Approx(1.0).epsilon(1e-12));
    }

    SplitMix64 rng_a(7);
    SplitMix64 rng_b(7);
    CHECK(random_schmidt(4, rng_a).coeffs() == random_schmidt(4, rng_b).coeffs());
    CHECK_THROWS_AS(random_schmidt(4, rng_a, 0.6), Error);
}
