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

#ifndef QEMKIT_SIMULATE_H
#define QEMKIT_SIMULATE_H

#include <Eigen/Dense>

#include "qemkit/circuit.h"
#include "qemkit/density_matrix.h"
#include "qemkit/noise.h"
#include "qemkit/pauli.h"
#include "qemkit/rng.h"

namespace qem {

/// Noiseless final state U|0...0><0...0|U^dagger.
DensityMatrix prepare_exact_state(const Circuit &circuit);

/// Noiseless final state vector U|0...0>. Used as the reference for spectral diagnostics.
Eigen::VectorXcd exact_statevector(const Circuit &circuit);

/// Final mixed state with the noise model's channels attached to every gate.
/// `rng` is required only for sampled angle noise.
DensityMatrix prepare_noisy_state(const Circuit &circuit, const NoiseModel &noise, Rng *rng = nullptr);

double simulate_exact(const Circuit &circuit, const PauliObservable &obs);
double simulate_noisy(const Circuit &circuit, const NoiseModel &noise, const PauliObservable &obs, Rng *rng = nullptr);

}  // namespace qem

#endif
