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

/// Fisher information of one probing configuration at one channel parameter.
///
/// `j_per_use` is normalized per channel invocation; multiplying by
/// `uses_per_shot` gives the Fisher information of the full output state.
struct QfiPoint {
    SchemeSpec scheme;
    double theta = 0.0;
    double j_per_use = 0.0;
    int uses_per_shot = 1;

    double j_per_shot() const { return j_per_use * uses_per_shot; }
};

/// Fisher information of a family whose state and derivative share one
/// eigenbasis: sum_k (dl_k)^2 / l_k over the eigenvalues l_k and their
/// derivatives dl_k.
///
/// Eigenvalues at most #kNullspaceEps are skipped when their derivative also
/// vanishes at that scale.
///
/// @throws ZeroEigenvalueError if an eigenvalue vanishes while its
///     derivative does not (the information diverges).
double qfi_quasiclassical(const RealVector& eigenvalues, const RealVector& derivatives);

/// Fisher information of the family (1 - h) I/dim + h |s><s| with |s> pure,
/// as a function of the mixing weight h and its parameter derivative dh:
///
///     J = dh^2 / ((1 - h) (h + 1/(dim - 1))).
///
/// @throws DivergentError at h >= 1 (pure-state limit).
double qfi_depolarizing(double h, double dh, int dim);

/// Closed-form Fisher information of a probing scheme, per channel use.
///
/// Every scheme reduces to qfi_depolarizing on its output space:
///   O     h = theta^n        on dimension d
///   E     h = theta^n        on dimension d^2
///   B     h = theta^(2n)     on dimension d^2
///   Eeta  h = eta * theta    on dimension d^2
/// Partial is evaluated through its dedicated pair-block reduction.
///
/// @throws ThetaOutOfRangeError for theta outside [0, 1).
QfiPoint qfi_scheme(const SchemeSpec& spec, double theta);

/// Single-use advantage of a noiseless-ancilla probe over an unentangled
/// probe, J_E - J_O = d (d-1) / ((1-theta) (1-theta+d theta) (1-theta+d^2 theta)).
double gain_e_over_o(double theta, int d);

/// Channel parameter above which an ancilla depolarized with strength eta
/// stops paying off:
///
///     g(eta) = (eta^2 (d+1) - 1) / (eta (1-eta) (d^2-2) + eta^2 d).
///
/// For theta > g(eta) the unentangled probe carries more information than
/// the noisy-ancilla probe.  Negative values mean entanglement never helps.
double eta_crossover(double eta, int d);

/// Channel parameter above which sending both halves of an entangled pair
/// through the channel (B, two uses) beats unentangled probing per use.
/// Found by bisection on [0.3, 0.99] to an interval width of 1e-10.
///
/// @throws NoRootFoundError if the bracket does not straddle a sign change.
double threshold_b_vs_o(int d);

}  // namespace qfiprobe
