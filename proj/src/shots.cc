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

#include "qemkit/shots.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

namespace qem {

std::string_view method_name(Method method) {
    switch (method) {
        case Method::kNoisy:
            return "noisy";
        case Method::kZne:
            return "zne";
        case Method::kVd:
            return "vd";
        case Method::kCdr:
            return "cdr";
        case Method::kVncdr:
            return "vncdr";
        case Method::kCgvd:
            return "cgvd";
        case Method::kUnited:
            return "united";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    std::string lower(name);
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    for (Method m : {Method::kNoisy, Method::kZne, Method::kVd, Method::kCdr, Method::kVncdr, Method::kCgvd,
                     Method::kUnited}) {
        if (lower == method_name(m)) {
            return m;
        }
    }
    throw std::invalid_argument("Unknown method '" + std::string(name) + "'.");
}

int64_t circuit_count(Method method, int n_levels, int training_circuits, int max_copies) {
    if (n_levels < 1 || training_circuits < 1 || max_copies < 1) {
        throw std::invalid_argument("Budget parameters must be positive.");
    }
    const int64_t levels = n_levels;
    const int64_t circuits = int64_t{training_circuits} + 1;
    const int64_t per_state = 2 * int64_t{max_copies} - 1;
    switch (method) {
        case Method::kNoisy:
            return 1;
        case Method::kZne:
            return levels;
        case Method::kVd:
            return 2;
        case Method::kCdr:
            return circuits;
        case Method::kVncdr:
            return levels * circuits;
        case Method::kCgvd:
            return circuits * per_state;
        case Method::kUnited:
            return levels * circuits * per_state;
    }
    throw std::invalid_argument("Unknown method.");
}

ShotBudget allocate_budget(Method method, int64_t total, int n_levels, int training_circuits, int max_copies) {
    if (total < 1) {
        throw std::invalid_argument("Total shot budget must be positive.");
    }
    ShotBudget b;
    b.total = total;
    b.circuit_count = circuit_count(method, n_levels, training_circuits, max_copies);
    b.per_circuit = total / b.circuit_count;
    if (b.per_circuit == 0) {
        throw BudgetTooSmall(
            "Budget of " + std::to_string(total) + " shots is smaller than the " + std::to_string(b.circuit_count) +
            " circuits " + std::string(method_name(method)) + " needs.");
    }
    return b;
}

double sample_expectation(double true_value, int64_t shots, Rng &rng) {
    if (shots < 1) {
        throw std::invalid_argument("Shot count must be at least 1.");
    }
    if (std::abs(true_value) > 1.0 + 1e-9 || std::isnan(true_value)) {
        throw std::invalid_argument("Expectation " + std::to_string(true_value) + " is outside [-1, 1].");
    }
    double p = std::clamp((1.0 + true_value) / 2.0, 0.0, 1.0);
    std::binomial_distribution<int64_t> dist(shots, p);
    int64_t k = dist(rng);
    return 2.0 * static_cast<double>(k) / static_cast<double>(shots) - 1.0;
}

double sample_vd_estimate(double numerator_true, double denominator_true, int64_t shots_each, Rng &rng) {
    if (!(denominator_true > 0.0 && denominator_true <= 1.0 + 1e-9)) {
        throw std::invalid_argument("VD denominator must lie in (0, 1].");
    }
    double num = sample_expectation(numerator_true, shots_each, rng);
    double den = sample_expectation(std::min(denominator_true, 1.0), shots_each, rng);
    if (den < 1e-6) {
        throw InsufficientShots(
            "Sampled VD denominator " + std::to_string(den) + " is not positive enough with " +
            std::to_string(shots_each) + " shots.");
    }
    return std::clamp(num / den, -1.0, 1.0);
}

}  // namespace qem
