// Copyright 2026 The qemkit Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef QEMKIT_GATE_H
#define QEMKIT_GATE_H

#include <array>
#include <string>
#include <string_view>

#include <Eigen/Dense>

namespace qem {

/// Native trapped-ion gate set.
///   RZ(a) = exp(-i a/2 Z), RY(b) = exp(-i b/2 Y), XX(d) = exp(-i d X(x)X).
enum class GateKind { RZ, RY, XX };

std::string_view gate_kind_name(GateKind kind);
GateKind parse_gate_kind(std::string_view name);

/// Spacing of the Clifford angles for a gate kind: pi/2 for RZ and RY, pi/4 for XX.
double clifford_grid_step(GateKind kind);

/// True when `angle` is within 1e-12 (on the circle) of a Clifford grid point.
bool on_clifford_grid(GateKind kind, double angle);

struct Gate {
    GateKind kind = GateKind::RZ;
    double angle = 0.0;
    std::array<int, 2> qubits{0, 0};
    bool clifford_tag = true;

    static Gate rz(int qubit, double angle);
    static Gate ry(int qubit, double angle);
    static Gate xx(int q0, int q1, double angle);

    int arity() const {
        return kind == GateKind::XX ? 2 : 1;
    }
    /// Same kind and qubits with a new angle; the Clifford tag is recomputed.
    Gate with_angle(double new_angle) const;

    bool operator==(const Gate &other) const = default;
};

/// Unitary of the gate in the local basis. For XX, local index bit 0 is qubits[0].
Eigen::MatrixXcd gate_unitary(GateKind kind, double angle);

}  // namespace qem

#endif
