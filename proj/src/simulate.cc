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

#include "qemkit/simulate.h"

#include <stdexcept>
#include <string>

namespace qem {

namespace {

void check_cap(const Circuit &circuit) {
    if (circuit.num_qubits > kMaxQubits) {
        throw std::invalid_argument(
            "Circuit has " + std::to_string(circuit.num_qubits) + " qubits; the simulator cap is " +
            std::to_string(kMaxQubits) + ".");
    }
    circuit.validate();
}

}  // namespace

DensityMatrix prepare_exact_state(const Circuit &circuit) {
    check_cap(circuit);
    DensityMatrix state(circuit.num_qubits);
    for (const Gate &g : circuit.gates) {
        state.apply_gate(g);
    }
    return state;
}

Eigen::VectorXcd exact_statevector(const Circuit &circuit) {
    check_cap(circuit);
    const Eigen::Index dim = Eigen::Index{1} << circuit.num_qubits;
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(dim);
    psi(0) = 1.0;
    for (const Gate &g : circuit.gates) {
        Eigen::MatrixXcd u = gate_unitary(g.kind, g.angle);
        uint64_t mask = 0;
        for (int t = 0; t < g.arity(); t++) {
            mask |= uint64_t{1} << g.qubits[t];
        }
        const Eigen::Index n = u.rows();
        std::vector<Eigen::Index> offsets(static_cast<size_t>(n));
        for (Eigen::Index s = 0; s < n; s++) {
            uint64_t off = 0;
            for (int t = 0; t < g.arity(); t++) {
                if ((s >> t) & 1) {
                    off |= uint64_t{1} << g.qubits[t];
                }
            }
            offsets[static_cast<size_t>(s)] = static_cast<Eigen::Index>(off);
        }
        Eigen::VectorXcd local(n);
        for (Eigen::Index b = 0; b < dim; b++) {
            if (static_cast<uint64_t>(b) & mask) {
                continue;
            }
            for (Eigen::Index s = 0; s < n; s++) {
                local(s) = psi(b | offsets[static_cast<size_t>(s)]);
            }
            Eigen::VectorXcd out = u * local;
            for (Eigen::Index s = 0; s < n; s++) {
                psi(b | offsets[static_cast<size_t>(s)]) = out(s);
            }
        }
    }
    return psi;
}

DensityMatrix prepare_noisy_state(const Circuit &circuit, const NoiseModel &noise, Rng *rng) {
    check_cap(circuit);
    noise.validate();
    DensityMatrix state(circuit.num_qubits);
    for (const Gate &g : circuit.gates) {
        for (const ChannelStep &step : attach_noise(g, noise)) {
            apply_step(state, step, noise.angle_noise, rng);
        }
    }
    return state;
}

double simulate_exact(const Circuit &circuit, const PauliObservable &obs) {
    return expectation(prepare_exact_state(circuit), obs);
}

double simulate_noisy(const Circuit &circuit, const NoiseModel &noise, const PauliObservable &obs, Rng *rng) {
    return expectation(prepare_noisy_state(circuit, noise, rng), obs);
}

}  // namespace qem
