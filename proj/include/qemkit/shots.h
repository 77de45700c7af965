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

#ifndef QEMKIT_SHOTS_H
#define QEMKIT_SHOTS_H

#include <cstdint>
#include <stdexcept>
#include <string_view>

#include "qemkit/rng.h"

namespace qem {

/// Mitigation methods. kNoisy is the unmitigated baseline.
enum class Method { kNoisy, kZne, kVd, kCdr, kVncdr, kCgvd, kUnited };

std::string_view method_name(Method method);
Method parse_method(std::string_view name);

struct ShotBudget {
    int64_t total = 0;
    int64_t per_circuit = 0;
    int64_t circuit_count = 0;

    /// Shots actually consumed: per_circuit * circuit_count <= total.
    int64_t used() const {
        return per_circuit * circuit_count;
    }
};

/// Thrown when an even split leaves fewer than one shot per circuit.
class BudgetTooSmall : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Thrown when a sampled VD denominator is too small to divide by.
class InsufficientShots : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Number of distinct circuit evaluations a method needs to produce one mitigated value.
///   noisy 1, ZNE n+1, VD 2, CDR N_t+1, vnCDR (n+1)(N_t+1),
///   CGVD (N_t+1)(2 M_max-1), UNITED (n+1)(N_t+1)(2 M_max-1).
int64_t circuit_count(Method method, int n_levels, int training_circuits, int max_copies);

/// Equal split of `total` shots across circuit_count(...) circuits.
ShotBudget allocate_budget(Method method, int64_t total, int n_levels, int training_circuits, int max_copies);

/// Mean of `shots` +-1 outcomes with expectation `true_value`:
/// k ~ Binomial(shots, (1 + true_value)/2), returns 2k/shots - 1.
double sample_expectation(double true_value, int64_t shots, Rng &rng);

/// Ratio of independently sampled numerator Tr(rho^M X) and denominator Tr(rho^M),
/// each a mean of `shots_each` +-1 outcomes. Clamped to [-1, 1].
double sample_vd_estimate(double numerator_true, double denominator_true, int64_t shots_each, Rng &rng);

}  // namespace qem

#endif
