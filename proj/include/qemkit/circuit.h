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

#ifndef QEMKIT_CIRCUIT_H
#define QEMKIT_CIRCUIT_H

#include <cstdint>
#include <vector>

#include "json.hpp"
#include "qemkit/gate.h"

namespace qem {

struct Circuit {
    int num_qubits = 0;
    int layers = 0;
    uint64_t seed = 0;
    std::vector<Gate> gates;

    /// Throws std::invalid_argument if a gate touches a qubit outside the register
    /// or repeats a qubit.
    void validate() const;
    size_t count(GateKind kind) const;
    size_t non_clifford_count() const;

    bool operator==(const Circuit &other) const = default;
};

/// Random trapped-ion circuit. Each layer is an XX sub-layer on pairs (0,1),(2,3),...
/// followed by one on pairs (1,2),(3,4),..., with open boundaries. Every qubit of every
/// XX is decorated beforehand by v(a,b,c) = RZ(a) RY(b) RZ(c), emitted in application
/// order RZ(c), RY(b), RZ(a). All angles are uniform in [0, 2pi).
Circuit build_random_circuit(int num_qubits, int layers, uint64_t seed);

/// Schema: {num_qubits, layers, seed, gates: [{kind, angle, qubits}]}.
nlohmann::json circuit_to_json(const Circuit &circuit);
Circuit circuit_from_json(const nlohmann::json &j);

}  // namespace qem

#endif
