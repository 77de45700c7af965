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

#include "qemkit/circuit.h"

#include <numbers>
#include <stdexcept>
#include <string>

#include "qemkit/rng.h"

namespace qem {

void Circuit::validate() const {
    if (num_qubits < 1) {
        throw std::invalid_argument("Circuit needs at least one qubit.");
    }
    for (const Gate &g : gates) {
        for (int t = 0; t < g.arity(); t++) {
            if (g.qubits[t] < 0 || g.qubits[t] >= num_qubits) {
                throw std::invalid_argument(
                    "Gate qubit " + std::to_string(g.qubits[t]) + " outside a " + std::to_string(num_qubits) +
                    "-qubit circuit.");
            }
        }
        if (g.arity() == 2 && g.qubits[0] == g.qubits[1]) {
            throw std::invalid_argument("Two-qubit gate repeats a qubit.");
        }
    }
}

size_t Circuit::count(GateKind kind) const {
    size_t n = 0;
    for (const Gate &g : gates) {
        n += g.kind == kind;
    }
    return n;
}

size_t Circuit::non_clifford_count() const {
    size_t n = 0;
    for (const Gate &g : gates) {
        n += !g.clifford_tag;
    }
    return n;
}

Circuit build_random_circuit(int num_qubits, int layers, uint64_t seed) {
    if (num_qubits < 2) {
        throw std::invalid_argument("Random circuits need at least 2 qubits.");
    }
    if (layers < 1) {
        throw std::invalid_argument("Random circuits need at least 1 layer.");
    }
    Rng rng(seed);
    auto angle = [&]() { return 2.0 * std::numbers::pi * uniform01(rng); };

    Circuit c;
    c.num_qubits = num_qubits;
    c.layers = layers;
    c.seed = seed;
    for (int layer = 0; layer < layers; layer++) {
        for (int offset = 0; offset < 2; offset++) {
            for (int q = offset; q + 1 < num_qubits; q += 2) {
                for (int target : {q, q + 1}) {
                    double a = angle();
                    double b = angle();
                    double g = angle();
                    c.gates.push_back(Gate::rz(target, g));
                    c.gates.push_back(Gate::ry(target, b));
                    c.gates.push_back(Gate::rz(target, a));
                }
                c.gates.push_back(Gate::xx(q, q + 1, angle()));
            }
        }
    }
    return c;
}

nlohmann::json circuit_to_json(const Circuit &circuit) {
    nlohmann::json gates = nlohmann::json::array();
    for (const Gate &g : circuit.gates) {
        nlohmann::json qs = nlohmann::json::array();
        for (int t = 0; t < g.arity(); t++) {
            qs.push_back(g.qubits[t]);
        }
        gates.push_back({{"kind", std::string(gate_kind_name(g.kind))}, {"angle", g.angle}, {"qubits", qs}});
    }
    return {
        {"num_qubits", circuit.num_qubits},
        {"layers", circuit.layers},
        {"seed", circuit.seed},
        {"gates", gates},
    };
}

Circuit circuit_from_json(const nlohmann::json &j) {
    Circuit c;
    c.num_qubits = j.at("num_qubits").get<int>();
    c.layers = j.value("layers", 0);
    c.seed = j.value("seed", uint64_t{0});
    for (const auto &jg : j.at("gates")) {
        GateKind kind = parse_gate_kind(jg.at("kind").get<std::string>());
        double angle = jg.at("angle").get<double>();
        auto qs = jg.at("qubits").get<std::vector<int>>();
        size_t arity = kind == GateKind::XX ? 2 : 1;
        if (qs.size() != arity) {
            throw std::invalid_argument(
                "Gate " + std::string(gate_kind_name(kind)) + " expects " + std::to_string(arity) + " qubits.");
        }
        c.gates.push_back(kind == GateKind::XX   ? Gate::xx(qs[0], qs[1], angle)
                          : kind == GateKind::RY ? Gate::ry(qs[0], angle)
                                                 : Gate::rz(qs[0], angle));
    }
    c.validate();
    return c;
}

}  // namespace qem
