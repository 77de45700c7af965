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

#ifndef QEMKIT_CLIFFORD_H
#define QEMKIT_CLIFFORD_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "qemkit/circuit.h"
#include "qemkit/density_matrix.h"
#include "qemkit/noise.h"
#include "qemkit/pauli.h"

namespace qem {

/// Nearest Clifford gate of the same kind. Distance is measured on the circle; exact
/// ties go to the smaller grid angle. The result angle lies in [0, 2pi).
Gate snap_to_clifford(const Gate &gate);

struct TrainingCircuit {
    Circuit circuit;
    double exact_value = 0.0;
    size_t non_clifford_count = 0;
    uint64_t seed = 0;
};

/// Snaps every XX and RY gate, keeps a uniformly random subset of min(keep, #RZ) RZ gates
/// intact and snaps the remaining RZ gates. Gate order and wiring are unchanged.
TrainingCircuit make_training_circuit(const Circuit &circuit, int keep, uint64_t seed, const PauliObservable &obs);

/// One regression feature: noise level c and copy count m (m = 1 is the plain noisy value).
struct FeatureLabel {
    int level = 1;
    int copies = 1;

    std::string name() const;
    bool operator==(const FeatureLabel &other) const = default;
};

/// Cartesian (level x copies) grid in schema order: level-major, copies 1..max_copies inner.
std::vector<FeatureLabel> feature_schema(std::span<const int> levels, int max_copies);

/// Infinite-shot feature values of one circuit for every (level, copies) pair.
struct ExactFeatures {
    std::vector<int> levels;
    int max_copies = 1;
    /// values[i][m - 1] for levels[i] and M = m.
    std::vector<std::vector<VdExpectation>> values;

    const VdExpectation &at(const FeatureLabel &label) const;
};

/// Simulates `circuit` at every noise level (scaled with seed derive_seed(scale_seed, {c}))
/// and records Tr(rho^M X), Tr(rho^M) for M = 1..max_copies.
ExactFeatures evaluate_exact_features(
    const Circuit &circuit,
    const NoiseModel &noise,
    const PauliObservable &obs,
    std::span<const int> levels,
    int max_copies,
    uint64_t scale_seed);

/// Feature vector for `schema`. With no shot count the exact values are returned;
/// otherwise m = 1 features are direct +-1 estimates and m >= 2 features VD ratios,
/// each using `shots` per measured circuit and its own stream derive_seed(seed, {c, m}).
std::vector<double> sample_features(
    const ExactFeatures &exact, std::span<const FeatureLabel> schema, std::optional<int64_t> shots, uint64_t seed);

struct TrainingOptions {
    int candidates = 100;
    int select = 50;
    int keep_non_clifford = 10;
};

class DegenerateTrainingSet : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Builds `candidates` near-Clifford circuits (seeds derive_seed(seed, {k})) and keeps the
/// `select` ones with the largest |exact value|; ties keep generation order.
/// Throws DegenerateTrainingSet when every candidate has |exact value| < 1e-12.
std::vector<TrainingCircuit> select_training_circuits(
    const Circuit &circuit, const PauliObservable &obs, const TrainingOptions &options, uint64_t seed);

/// Post-selected training circuits together with their exact feature tables.
struct TrainingPool {
    std::vector<TrainingCircuit> circuits;
    std::vector<ExactFeatures> features;
};

TrainingPool build_training_pool(
    const Circuit &circuit,
    const PauliObservable &obs,
    const NoiseModel &noise,
    const TrainingOptions &options,
    std::span<const int> levels,
    int max_copies,
    uint64_t seed);

struct TrainingSet {
    std::vector<FeatureLabel> schema;
    std::vector<std::vector<double>> features;
    std::vector<double> targets;
    std::vector<uint64_t> seeds;

    size_t size() const {
        return targets.size();
    }
};

/// Samples the pool's features for `schema`. Circuit i uses the stream derive_seed(seed, {i}).
TrainingSet sample_training_set(
    const TrainingPool &pool, std::span<const FeatureLabel> schema, std::optional<int64_t> shots, uint64_t seed);

TrainingSet build_training_set(
    const Circuit &circuit,
    const PauliObservable &obs,
    const NoiseModel &noise,
    const TrainingOptions &options,
    std::span<const int> levels,
    int max_copies,
    std::optional<int64_t> shots,
    uint64_t seed);

/// CSV with header "seed,y,<feature names>" and one row per training circuit.
void write_training_csv(std::ostream &out, const TrainingSet &set);

}  // namespace qem

#endif
