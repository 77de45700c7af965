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

#include "qemkit/gate.h"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace qem {

std::string_view gate_kind_name(GateKind kind) {
    switch (kind) {
        case GateKind::RZ:
            return "RZ";
        case GateKind::RY:
            return "RY";
        case GateKind::XX:
            return "XX";
    }
    return "?";
}

GateKind parse_gate_kind(std::string_view name) {
    if (name == "RZ") {
        return GateKind::RZ;
    }
    if (name == "RY") {
        return GateKind::RY;
    }
    if (name == "XX") {
        return GateKind::XX;
    }
    throw std::invalid_argument("Unknown gate kind '" + std::string(name) + "'.");
}

double clifford_grid_step(GateKind kind) {
    return kind == GateKind::XX ? std::numbers::pi / 4 : std::numbers::pi / 2;
}

bool on_clifford_grid(GateKind kind, double angle) {
    double step = clifford_grid_step(kind);
    double r = std::remainder(angle, step);
    return std::abs(r) <= 1e-12;
}

Gate Gate::rz(int qubit, double angle) {
    return Gate{GateKind::RZ, angle, {qubit, qubit}, on_clifford_grid(GateKind::RZ, angle)};
}

Gate Gate::ry(int qubit, double angle) {
    return Gate{GateKind::RY, angle, {qubit, qubit}, on_clifford_grid(GateKind::RY, angle)};
}

Gate Gate::xx(int q0, int q1, double angle) {
    if (q0 == q1) {
        throw std::invalid_argument("XX gate needs two distinct qubits.");
    }
    return Gate{GateKind::XX, angle, {q0, q1}, on_clifford_grid(GateKind::XX, angle)};
}

Gate Gate::with_angle(double new_angle) const {
    Gate g = *this;
    g.angle = new_angle;
    g.clifford_tag = on_clifford_grid(kind, new_angle);
    return g;
}

Eigen::MatrixXcd gate_unitary(GateKind kind, double angle) {
    using cd = std::complex<double>;
    const cd i{0.0, 1.0};
    switch (kind) {
        case GateKind::RZ: {
            Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(2, 2);
            u(0, 0) = std::exp(-i * (angle / 2));
            u(1, 1) = std::exp(i * (angle / 2));
            return u;
        }
        case GateKind::RY: {
            double c = std::cos(angle / 2);
            double s = std::sin(angle / 2);
            Eigen::MatrixXcd u(2, 2);
            u << c, -s, s, c;
            return u;
        }
        case GateKind::XX: {
            // cos(d) I - i sin(d) X(x)X; X(x)X maps |b> to |3 - b>.
            Eigen::MatrixXcd u = Eigen::MatrixXcd::Zero(4, 4);
            cd c = std::cos(angle);
            cd s = -i * std::sin(angle);
            for (int b = 0; b < 4; b++) {
                u(b, b) = c;
                u(3 - b, b) = s;
            }
            return u;
        }
    }
    throw std::invalid_argument("Unknown gate kind.");
}

}  // namespace qem
