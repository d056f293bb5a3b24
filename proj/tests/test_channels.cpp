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

#include "qfiprobe/channels.hpp"

#include "testutil.hpp"

using namespace qfiprobe;

TEST_CASE("depolarize interpolates between the input and the mixed state") {
    SplitMix64 rng(101);
    const DensityMatrix sigma = testutil::random_density(3, rng);

    CHECK(max_abs(depolarize(sigma, 0.0).matrix() - Matrix::Identity(3, 3) / 3.0) <
          1e-14);
    CHECK(max_abs(depolarize(sigma, 1.0).matrix() - sigma.matrix()) < 1e-14);

    const DensityMatrix mid = depolarize(sigma, 0.3);
    CHECK(max_abs(mid.matrix() -
                  (0.7 / 3.0 * Matrix::Identity(3, 3) + 0.3 * sigma.matrix())) < 1e-14);
    CHECK_THROWS_AS(depolarize(sigma, 1.5), ThetaOutOfRangeError);
}

TEST_CASE("maximally entangled input has maximally mixed marginals") {
    const int d = 3;
    const DensityMatrix mu = max_entangled_state(d);
    CHECK(mu.dim() == d * d);
    CHECK(max_abs(testutil::partial_trace_first(mu.matrix(), d, d) -
                  Matrix::Identity(d, d) / d) < 1e-14);
    CHECK(max_abs(testutil::partial_trace_second(mu.matrix(), d, d) -
                  Matrix::Identity(d, d) / d) < 1e-14);
}

TEST_CASE("schmidt_state marginals are the squared coefficients") {
    RealVector coeffs(3);
    coeffs << 0.2, 0.6, std::sqrt(1.0 - 0.04 - 0.36);
    const SchmidtVector psi(coeffs);
    const DensityMatrix state = schmidt_state(psi);

    const Matrix marginal = testutil::partial_trace_first(state.matrix(), 3, 3);
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            const Complex expected = i == j ? Complex(psi[i] * psi[i], 0.0) : Complex(0.0);
            CHECK(std::abs(marginal(i, j) - expected) < 1e-14);
        }
    }
}

TEST_CASE("SchmidtVector validates normalization and sign") {
    RealVector short_norm(2);
    short_norm << 0.5, 0.5;
    CHECK_THROWS_AS(SchmidtVector{short_norm}, NotNormalizedError);

    RealVector negative(2);
    negative << -std::numbers::sqrt2 / 2.0, std::numbers::sqrt2 / 2.0;
    CHECK_THROWS_AS(SchmidtVector{negative}, NotNormalizedError);

    const SchmidtVector maximal = SchmidtVector::maximal(4);
    CHECK(maximal.coeffs().squaredNorm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(maximal[0] == doctest::Approx(0.5).epsilon(1e-14));

    const SchmidtVector product = SchmidtVector::unentangled(3);
    CHECK(product[0] == 1.0);
    CHECK(product[2] == 0.0);
}

TEST_CASE("scheme validation rejects undefined combinations") {
    CHECK_THROWS_AS(SchemeSpec::make(Scheme::O, 1), Error);
    CHECK_THROWS_AS(SchemeSpec::make(Scheme::E, 3, 0), Error);
    CHECK_THROWS_AS(SchemeSpec::with_eta(2, 0.0), Error);
    CHECK_THROWS_AS(SchemeSpec::with_eta(2, 1.2), Error);

    SchemeSpec eta_recirculated = SchemeSpec::with_eta(2, 0.9);
    eta_recirculated.n = 2;
    CHECK_THROWS_AS(eta_recirculated.validate(), UnsupportedCombinationError);

    SchemeSpec partial = SchemeSpec::with_psi(SchmidtVector::maximal(3));
    partial.n = 2;
    CHECK_THROWS_AS(partial.validate(), UnsupportedCombinationError);

    SchemeSpec stray_psi = SchemeSpec::make(Scheme::O, 3);
    stray_psi.psi = SchmidtVector::maximal(3);
    CHECK_THROWS_AS(stray_psi.validate(), Error);
}

TEST_CASE("output dimension and channel-use accounting per scheme") {
    CHECK(SchemeSpec::make(Scheme::O, 3, 2).output_dim() == 3);
    CHECK(SchemeSpec::make(Scheme::O, 3, 2).channel_uses_per_shot() == 2);
    CHECK(SchemeSpec::make(Scheme::E, 3, 2).output_dim() == 9);
    CHECK(SchemeSpec::make(Scheme::E, 3, 2).channel_uses_per_shot() == 2);
    CHECK(SchemeSpec::make(Scheme::B, 3, 2).channel_uses_per_shot() == 4);
    CHECK(SchemeSpec::with_eta(3, 0.8).channel_uses_per_shot() == 1);
    CHECK(SchemeSpec::with_psi(SchmidtVector::maximal(3)).channel_uses_per_shot() == 1);
}

TEST_CASE("family states are valid and match the depolarizing map") {
    // On the full [0, 1] domain the entangled family at theta=0 is the
    // maximally mixed state and at theta=1 the pure input.
    const ParamFamily fam =
        family(SchemeSpec::make(Scheme::E, 2), ThetaInterval{0.0, 1.0});
    CHECK(max_abs(fam.rho(0.0).matrix() - Matrix::Identity(4, 4) / 4.0) < 1e-14);
    CHECK(max_abs(fam.rho(1.0).matrix() - max_entangled_state(2).matrix()) < 1e-14);

    const DensityMatrix via_channel = depolarize(max_entangled_state(2), 0.4);
    CHECK(max_abs(fam.rho(0.4).matrix() - via_channel.matrix()) < 1e-14);
}

TEST_CASE("family respects its theta domain") {
    const ParamFamily fam = family(SchemeSpec::make(Scheme::O, 2));
    CHECK_THROWS_AS(fam.rho(0.005), ThetaOutOfRangeError);
    CHECK_THROWS_AS(fam.drho(0.995), ThetaOutOfRangeError);
    CHECK_NOTHROW(fam.rho(0.01));
    CHECK_NOTHROW(fam.rho(0.99));
}

TEST_CASE("family derivatives match finite differences") {
    SplitMix64 rng(202);
    std::vector<SchemeSpec> specs = {
        SchemeSpec::make(Scheme::O, 3, 2),
        SchemeSpec::make(Scheme::E, 2, 1),
        SchemeSpec::make(Scheme::B, 2, 1),
        SchemeSpec::with_eta(2, 0.8),
        SchemeSpec::with_psi(random_schmidt(3, rng, 0.05)),
    };
    for (const SchemeSpec& spec : specs) {
        const ParamFamily fam = family(spec);
        for (const double theta : {0.15, 0.5, 0.85}) {
            const Matrix numeric = testutil::finite_diff_drho(fam, theta, 1e-5);
            CHECK(max_abs(fam.drho(theta) - numeric) < 1e-7);
        }
    }
}

TEST_CASE("partial family keeps the ancilla marginal fixed") {
    SplitMix64 rng(303);
    const SchmidtVector psi = random_schmidt(3, rng, 0.05);
    const ParamFamily fam = family(SchemeSpec::with_psi(psi));

    for (const double theta : {0.1, 0.6, 0.9}) {
        const Matrix marginal =
            testutil::partial_trace_first(fam.rho(theta).matrix(), 3, 3);
        for (int i = 0; i < 3; ++i) {
            CHECK(std::abs(marginal(i, i).real() - psi[i] * psi[i]) < 1e-12);
        }
    }
}

TEST_CASE("scheme names round-trip through parsing") {
    for (const Scheme s :
         {Scheme::O, Scheme::E, Scheme::B, Scheme::Eeta, Scheme::Partial}) {
        CHECK(scheme_from_string(to_string(s)) == s);
    }
    CHECK_FALSE(scheme_from_string("bogus").has_value());
}
