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

#include "qemkit/noise.h"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace qem {

namespace {

void check_unit(double p, const char *name) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1].");
    }
}

}  // namespace

NoiseModel NoiseModel::noiseless() {
    NoiseModel n;
    n.p1_depol = 0;
    n.p2_depol = 0;
    n.p_dephase = 0;
    n.angle_sigma = 0;
    return n;
}

NoiseModel NoiseModel::global_depolarizing(double p) {
    NoiseModel n = noiseless();
    n.mode = NoiseMode::kGlobalDepolarizing;
    n.global_p = p;
    return n;
}

void NoiseModel::validate() const {
    check_unit(p1_depol, "p1_depol");
    check_unit(p2_depol, "p2_depol");
    check_unit(p_dephase, "p_dephase");
    check_unit(global_p, "global_p");
    if (!(angle_sigma >= 0.0)) {
        throw std::invalid_argument("angle_sigma must be non-negative.");
    }
}

nlohmann::json noise_to_json(const NoiseModel &noise) {
    return {
        {"mode", noise.mode == NoiseMode::kLocal ? "local" : "global_depolarizing"},
        {"p1_depol", noise.p1_depol},
        {"p2_depol", noise.p2_depol},
        {"p_dephase", noise.p_dephase},
        {"angle_sigma", noise.angle_sigma},
        {"global_p", noise.global_p},
        {"angle_noise", noise.angle_noise == AngleNoise::kQuadrature ? "quadrature" : "sampled"},
    };
}

NoiseModel noise_from_json(const nlohmann::json &j) {
    NoiseModel n;
    std::string mode = j.value("mode", std::string("local"));
    if (mode == "local") {
        n.mode = NoiseMode::kLocal;
    } else if (mode == "global_depolarizing") {
        n.mode = NoiseMode::kGlobalDepolarizing;
    } else {
        throw std::invalid_argument("Unknown noise mode '" + mode + "'.");
    }
    n.p1_depol = j.value("p1_depol", n.p1_depol);
    n.p2_depol = j.value("p2_depol", n.p2_depol);
    n.p_dephase = j.value("p_dephase", n.p_dephase);
    n.angle_sigma = j.value("angle_sigma", n.angle_sigma);
    n.global_p = j.value("global_p", n.global_p);
    std::string angle = j.value("angle_noise", std::string("quadrature"));
    if (angle == "quadrature") {
        n.angle_noise = AngleNoise::kQuadrature;
    } else if (angle == "sampled") {
        n.angle_noise = AngleNoise::kSampled;
    } else {
        throw std::invalid_argument("Unknown angle_noise '" + angle + "'.");
    }
    n.validate();
    return n;
}

std::vector<ChannelStep> attach_noise(const Gate &gate, const NoiseModel &noise) {
    std::vector<ChannelStep> steps;
    if (noise.mode == NoiseMode::kGlobalDepolarizing) {
        steps.push_back(GateStep{gate});
        if (noise.global_p > 0) {
            steps.push_back(GlobalDepolarizingStep{noise.global_p});
        }
        return steps;
    }
    if (noise.angle_sigma > 0) {
        steps.push_back(ImpreciseGateStep{gate, noise.angle_sigma});
    } else {
        steps.push_back(GateStep{gate});
    }
    double p_depol = gate.arity() == 2 ? noise.p2_depol : noise.p1_depol;
    if (p_depol > 0) {
        for (int t = 0; t < gate.arity(); t++) {
            steps.push_back(DepolarizingStep{p_depol, gate.qubits[t]});
        }
    }
    if (noise.p_dephase > 0) {
        for (int t = 0; t < gate.arity(); t++) {
            steps.push_back(DephasingStep{noise.p_dephase, gate.qubits[t]});
        }
    }
    return steps;
}

void apply_step(DensityMatrix &state, const ChannelStep &step, AngleNoise angle_noise, Rng *rng) {
    struct Visitor {
        DensityMatrix &state;
        AngleNoise angle_noise;
        Rng *rng;

        void operator()(const GateStep &s) const {
            state.apply_gate(s.gate);
        }
        void operator()(const ImpreciseGateStep &s) const {
            std::span<const int> qs(s.gate.qubits.data(), static_cast<size_t>(s.gate.arity()));
            if (angle_noise == AngleNoise::kSampled) {
                if (rng == nullptr) {
                    throw std::invalid_argument("Sampled angle noise needs a random stream.");
                }
                std::normal_distribution<double> err(0.0, s.sigma);
                state.apply_unitary(gate_unitary(s.gate.kind, s.gate.angle + err(*rng)), qs);
                return;
            }
            // 3-point Gauss-Hermite rule for N(0, sigma^2): nodes 0, +-sqrt(3) sigma.
            const double h = std::sqrt(3.0) * s.sigma;
            const double weights[3] = {1.0 / 6.0, 2.0 / 3.0, 1.0 / 6.0};
            const Eigen::MatrixXcd unitaries[3] = {
                gate_unitary(s.gate.kind, s.gate.angle - h),
                gate_unitary(s.gate.kind, s.gate.angle),
                gate_unitary(s.gate.kind, s.gate.angle + h),
            };
            state.apply_unitary_mixture(weights, unitaries, qs);
        }
        void operator()(const DepolarizingStep &s) const {
            state.apply_depolarizing(s.p, s.qubit);
        }
        void operator()(const DephasingStep &s) const {
            state.apply_dephasing(s.p, s.qubit);
        }
        void operator()(const GlobalDepolarizingStep &s) const {
            state.apply_global_depolarizing(s.p);
        }
    };
    std::visit(Visitor{state, angle_noise, rng}, step);
}

Circuit scale_circuit(const Circuit &circuit, int c, uint64_t seed) {
    if (c < 1 || c > 3) {
        throw std::invalid_argument("Unsupported noise level " + std::to_string(c) + "; expected 1, 2 or 3.");
    }
    if (c == 1) {
        return circuit;
    }
    Rng rng(seed);
    Circuit out = circuit;
    out.gates.clear();
    out.gates.reserve(circuit.gates.size() * static_cast<size_t>(c));
    for (const Gate &g : circuit.gates) {
        if (c == 2) {
            double a = g.angle * uniform01(rng);
            out.gates.push_back(g.with_angle(a));
            out.gates.push_back(g.with_angle(g.angle - a));
        } else {
            double a = 2.0 * std::numbers::pi * uniform01(rng);
            out.gates.push_back(g);
            out.gates.push_back(g.with_angle(a));
            out.gates.push_back(g.with_angle(-a));
        }
    }
    return out;
}

}  // namespace qem
