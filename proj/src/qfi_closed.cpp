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

#include "qfiprobe/qfi_closed.hpp"

#include <cmath>

#include "qfiprobe/partial_ent.hpp"

namespace qfiprobe {

namespace {

/// Per-use information of the plain depolarizing family h = theta^uses on
/// dimension `dim`: the state information divided by the number of uses.
double per_use_power_mix(double theta, int dim, int uses) {
    const double h = std::pow(theta, uses);
    const double dh = uses * std::pow(theta, uses - 1);
    return qfi_depolarizing(h, dh, dim) / uses;
}

}  // namespace

double qfi_quasiclassical(const RealVector& eigenvalues, const RealVector& derivatives) {
    if (eigenvalues.size() != derivatives.size()) {
        throw Error("qfi_quasiclassical: eigenvalue and derivative lists differ in length");
    }
    double info = 0.0;
    for (Eigen::Index k = 0; k < eigenvalues.size(); ++k) {
        const double l = eigenvalues(k);
        const double dl = derivatives(k);
        if (l <= kNullspaceEps) {
            if (std::abs(dl) > kNullspaceEps) {
                throw ZeroEigenvalueError(
                    "qfi_quasiclassical: eigenvalue vanishes with nonzero derivative");
            }
            continue;
        }
        info += dl * dl / l;
    }
    return info;
}

double qfi_depolarizing(double h, double dh, int dim) {
    if (dim < 2) {
        throw Error("qfi_depolarizing: dimension must be at least 2");
    }
    if (h < 0.0) {
        throw Error("qfi_depolarizing: mixing weight must be nonnegative");
    }
    if (1.0 - h <= 1e-15) {
        throw DivergentError("qfi_depolarizing: information diverges at the pure-state limit");
    }
    return dh * dh / ((1.0 - h) * (h + 1.0 / (dim - 1)));
}

QfiPoint qfi_scheme(const SchemeSpec& spec, double theta) {
    spec.validate();
    if (theta < 0.0 || theta >= 1.0) {
        throw ThetaOutOfRangeError("qfi_scheme: theta must lie in [0, 1)");
    }

    QfiPoint point;
    point.scheme = spec;
    point.theta = theta;
    point.uses_per_shot = spec.channel_uses_per_shot();

    switch (spec.kind) {
        case Scheme::O:
            point.j_per_use = per_use_power_mix(theta, spec.d, spec.n);
            break;
        case Scheme::E:
            point.j_per_use = per_use_power_mix(theta, spec.d * spec.d, spec.n);
            break;
        case Scheme::B:
            point.j_per_use = per_use_power_mix(theta, spec.d * spec.d, 2 * spec.n);
            break;
        case Scheme::Eeta:
            point.j_per_use = qfi_depolarizing(spec.eta * theta, spec.eta, spec.d * spec.d);
            break;
        case Scheme::Partial:
            point.j_per_use = qfi_partial(*spec.psi, theta);
            break;
    }
    return point;
}

double gain_e_over_o(double theta, int d) {
    if (d < 2) {
        throw Error("gain_e_over_o: dimension must be at least 2");
    }
    if (theta < 0.0 || theta >= 1.0) {
        throw ThetaOutOfRangeError("gain_e_over_o: theta must lie in [0, 1)");
    }
    const double r = 1.0 - theta;
    return d * (d - 1.0) / (r * (r + d * theta) * (r + d * d * theta));
}

double eta_crossover(double eta, int d) {
    if (d < 2) {
        throw Error("eta_crossover: dimension must be at least 2");
    }
    if (eta <= 0.0 || eta > 1.0) {
        throw Error("eta_crossover: eta must lie in (0, 1]");
    }
    const double denom = eta * (1.0 - eta) * (d * d - 2.0) + eta * eta * d;
    if (std::abs(denom) < 1e-14) {
        throw DegenerateDenominatorError("eta_crossover: denominator vanishes");
    }
    return (eta * eta * (d + 1.0) - 1.0) / denom;
}

double threshold_b_vs_o(int d) {
    if (d < 2) {
        throw Error("threshold_b_vs_o: dimension must be at least 2");
    }
    const auto excess = [d](double theta) {
        return per_use_power_mix(theta, d * d, 2) - per_use_power_mix(theta, d, 1);
    };

    double lo = 0.3;
    double hi = 0.99;
    double f_lo = excess(lo);
    const double f_hi = excess(hi);
    if (!(f_lo < 0.0 && f_hi > 0.0)) {
        throw NoRootFoundError("threshold_b_vs_o: no sign change on [0.3, 0.99]");
    }
    while (hi - lo > 1e-10) {
        const double mid = (lo + hi) / 2.0;
        const double f_mid = excess(mid);
        if (f_mid == 0.0) {
            return mid;
        }
        if ((f_lo < 0.0) == (f_mid < 0.0)) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2.0;
}

}  // namespace qfiprobe
