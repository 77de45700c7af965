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

#ifndef QEMKIT_NOISE_H
#define QEMKIT_NOISE_H

#include <cstdint>
#include <variant>
#include <vector>

#include "json.hpp"
#include "qemkit/circuit.h"
#include "qemkit/density_matrix.h"
#include "qemkit/rng.h"

namespace qem {

enum class NoiseMode {
    /// Per-gate local depolarizing, dephasing and angle imprecision.
    kLocal,
    /// One global depolarizing channel after every gate. Used for the analytic oracles.
    kGlobalDepolarizing,
};

enum class AngleNoise {
    /// Deterministic 3-point Gauss-Hermite average over the Gaussian angle error.
    kQuadrature,
    /// One Gaussian angle error drawn per gate application.
    kSampled,
};

/// Trapped-ion noise configuration. Probabilities are per gate; angle_sigma is in radians.
/// The defaults are realistic trapped-ion magnitudes, not calibrated device values.
struct NoiseModel {
    double p1_depol = 5e-4;
    double p2_depol = 5e-3;
    double p_dephase = 1e-3;
    double angle_sigma = 5e-3;
    NoiseMode mode = NoiseMode::kLocal;
    double global_p = 0.0;
    AngleNoise angle_noise = AngleNoise::kQuadrature;

    static NoiseModel noiseless();
    static NoiseModel global_depolarizing(double p);

    void validate() const;
    bool operator==(const NoiseModel &other) const = default;
};

nlohmann::json noise_to_json(const NoiseModel &noise);
/// Missing keys keep their defaults.
NoiseModel noise_from_json(const nlohmann::json &j);

struct GateStep {
    Gate gate;
};
/// A gate whose angle carries a Gaussian error of width `sigma`.
struct ImpreciseGateStep {
    Gate gate;
    double sigma;
};
struct DepolarizingStep {
    double p;
    int qubit;
};
struct DephasingStep {
    double p;
    int qubit;
};
struct GlobalDepolarizingStep {
    double p;
};
using ChannelStep = std::variant<GateStep, ImpreciseGateStep, DepolarizingStep, DephasingStep, GlobalDepolarizingStep>;

/// Channel sequence realizing one noisy gate. Zero-strength channels are omitted,
/// so a noiseless model yields the bare gate.
std::vector<ChannelStep> attach_noise(const Gate &gate, const NoiseModel &noise);

/// Applies one step. `rng` is only consulted for sampled angle noise.
void apply_step(DensityMatrix &state, const ChannelStep &step, AngleNoise angle_noise, Rng *rng);

/// Noise-level scaling by gate multiplication.
///   c = 1: unchanged.
///   c = 2: every G(t) becomes G(a) G(t - a) with a = t * u, u uniform in [0, 1).
///   c = 3: every G(t) becomes G(t) G(a) G(-a) with a uniform in [0, 2pi).
/// The noiseless unitary is preserved and the gate count scales by exactly c.
Circuit scale_circuit(const Circuit &circuit, int c, uint64_t seed);

}  // namespace qem

#endif
