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

#include "qemkit/clifford.h"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <numbers>
#include <numeric>

#include "qemkit/shots.h"
#include "qemkit/simulate.h"

namespace qem {

Gate snap_to_clifford(const Gate &gate) {
    const double two_pi = 2.0 * std::numbers::pi;
    const double step = clifford_grid_step(gate.kind);
    const int points = static_cast<int>(std::lround(two_pi / step));
    double r = std::fmod(gate.angle, two_pi);
    if (r < 0) {
        r += two_pi;
    }
    int k = static_cast<int>(std::floor(r / step));
    double below = r - k * step;
    double above = (k + 1) * step - r;
    if (above < below) {
        k++;
    }
    k %= points;
    Gate out = gate;
    out.angle = k * step;
    out.clifford_tag = true;
    return out;
}

TrainingCircuit make_training_circuit(const Circuit &circuit, int keep, uint64_t seed, const PauliObservable &obs) {
    if (keep < 0) {
        throw std::invalid_argument("Number of kept non-Clifford gates must be non-negative.");
    }
    std::vector<size_t> rz;
    for (size_t k = 0; k < circuit.gates.size(); k++) {
        if (circuit.gates[k].kind == GateKind::RZ) {
            rz.push_back(k);
        }
    }
    // Partial Fisher-Yates: the first `kept` entries become a uniform random subset.
    Rng rng(seed);
    size_t kept = std::min(rz.size(), static_cast<size_t>(keep));
    for (size_t i = 0; i < kept; i++) {
        size_t j = i + static_cast<size_t>(uniform_index(rng, rz.size() - i));
        std::swap(rz[i], rz[j]);
    }
    std::vector<bool> intact(circuit.gates.size(), false);
    for (size_t i = 0; i < kept; i++) {
        intact[rz[i]] = true;
    }

    TrainingCircuit tc;
    tc.seed = seed;
    tc.circuit = circuit;
    tc.circuit.seed = seed;
    for (size_t k = 0; k < circuit.gates.size(); k++) {
        if (!intact[k]) {
            tc.circuit.gates[k] = snap_to_clifford(circuit.gates[k]);
        }
    }
    tc.non_clifford_count = tc.circuit.non_clifford_count();
    tc.exact_value = simulate_exact(tc.circuit, obs);
    return tc;
}

std::string FeatureLabel::name() const {
    return "c" + std::to_string(level) + "m" + std::to_string(copies);
}

std::vector<FeatureLabel> feature_schema(std::span<const int> levels, int max_copies) {
    std::vector<FeatureLabel> out;
    for (int c : levels) {
        for (int m = 1; m <= max_copies; m++) {
            out.push_back(FeatureLabel{c, m});
        }
    }
    return out;
}

const VdExpectation &ExactFeatures::at(const FeatureLabel &label) const {
    auto it = std::find(levels.begin(), levels.end(), label.level);
    if (it == levels.end() || label.copies < 1 || label.copies > max_copies) {
        throw std::invalid_argument("Feature " + label.name() + " was not evaluated.");
    }
    return values[static_cast<size_t>(it - levels.begin())][static_cast<size_t>(label.copies - 1)];
}

ExactFeatures evaluate_exact_features(
    const Circuit &circuit,
    const NoiseModel &noise,
    const PauliObservable &obs,
    std::span<const int> levels,
    int max_copies,
    uint64_t scale_seed) {
    ExactFeatures f;
    f.levels.assign(levels.begin(), levels.end());
    f.max_copies = max_copies;
    for (int c : levels) {
        uint64_t level_seed = derive_seed(scale_seed, {static_cast<uint64_t>(c)});
        Circuit scaled = scale_circuit(circuit, c, level_seed);
        Rng angle_rng(derive_seed(level_seed, {0xA11CE}));
        DensityMatrix rho = prepare_noisy_state(scaled, noise, &angle_rng);
        f.values.push_back(vd_expectations(rho, obs, max_copies));
    }
    return f;
}

std::vector<double> sample_features(
    const ExactFeatures &exact, std::span<const FeatureLabel> schema, std::optional<int64_t> shots, uint64_t seed) {
    std::vector<double> out;
    out.reserve(schema.size());
    for (const FeatureLabel &label : schema) {
        const VdExpectation &v = exact.at(label);
        if (!shots) {
            out.push_back(v.ratio);
            continue;
        }
        Rng rng(derive_seed(seed, {static_cast<uint64_t>(label.level), static_cast<uint64_t>(label.copies)}));
        if (label.copies == 1) {
            out.push_back(sample_expectation(std::clamp(v.ratio, -1.0, 1.0), *shots, rng));
        } else {
            out.push_back(sample_vd_estimate(v.numerator, v.denominator, *shots, rng));
        }
    }
    return out;
}

std::vector<TrainingCircuit> select_training_circuits(
    const Circuit &circuit, const PauliObservable &obs, const TrainingOptions &options, uint64_t seed) {
    if (options.select < 1 || options.select > options.candidates) {
        throw std::invalid_argument("Training selection must satisfy 1 <= select <= candidates.");
    }
    std::vector<TrainingCircuit> pool;
    pool.reserve(static_cast<size_t>(options.candidates));
    bool informative = false;
    for (int k = 0; k < options.candidates; k++) {
        pool.push_back(
            make_training_circuit(circuit, options.keep_non_clifford, derive_seed(seed, {static_cast<uint64_t>(k)}), obs));
        informative |= std::abs(pool.back().exact_value) >= 1e-12;
    }
    if (!informative) {
        throw DegenerateTrainingSet("Every near-Clifford candidate has a vanishing exact value.");
    }
    std::stable_sort(pool.begin(), pool.end(), [](const TrainingCircuit &a, const TrainingCircuit &b) {
        return std::abs(a.exact_value) > std::abs(b.exact_value);
    });
    pool.resize(static_cast<size_t>(options.select));
    return pool;
}

TrainingPool build_training_pool(
    const Circuit &circuit,
    const PauliObservable &obs,
    const NoiseModel &noise,
    const TrainingOptions &options,
    std::span<const int> levels,
    int max_copies,
    uint64_t seed) {
    TrainingPool pool;
    pool.circuits = select_training_circuits(circuit, obs, options, seed);
    for (const TrainingCircuit &tc : pool.circuits) {
        pool.features.push_back(evaluate_exact_features(tc.circuit, noise, obs, levels, max_copies, tc.seed));
    }
    return pool;
}

TrainingSet sample_training_set(
    const TrainingPool &pool, std::span<const FeatureLabel> schema, std::optional<int64_t> shots, uint64_t seed) {
    TrainingSet set;
    set.schema.assign(schema.begin(), schema.end());
    for (size_t i = 0; i < pool.circuits.size(); i++) {
        set.features.push_back(sample_features(pool.features[i], schema, shots, derive_seed(seed, {i})));
        set.targets.push_back(pool.circuits[i].exact_value);
        set.seeds.push_back(pool.circuits[i].seed);
    }
    return set;
}

TrainingSet build_training_set(
    const Circuit &circuit,
    const PauliObservable &obs,
    const NoiseModel &noise,
    const TrainingOptions &options,
    std::span<const int> levels,
    int max_copies,
    std::optional<int64_t> shots,
    uint64_t seed) {
    TrainingPool pool = build_training_pool(circuit, obs, noise, options, levels, max_copies, seed);
    auto schema = feature_schema(levels, max_copies);
    return sample_training_set(pool, schema, shots, derive_seed(seed, {0x5A3F}));
}

void write_training_csv(std::ostream &out, const TrainingSet &set) {
    out << "seed,y";
    for (const FeatureLabel &label : set.schema) {
        out << ',' << label.name();
    }
    out << '\n';
    out << std::setprecision(17);
    for (size_t i = 0; i < set.size(); i++) {
        out << set.seeds[i] << ',' << set.targets[i];
        for (double x : set.features[i]) {
            out << ',' << x;
        }
        out << '\n';
    }
}

}  // namespace qem
