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

#ifndef QEMKIT_MITIGATION_H
#define QEMKIT_MITIGATION_H

#include <optional>
#include <span>
#include <vector>

#include "json.hpp"
#include "qemkit/clifford.h"

namespace qem {

enum class ExtrapolationFit { kRichardson, kLinear, kExponential };

struct ExtrapolationSpec {
    /// Noise levels 1 = c_0 < c_1 < ... < c_n.
    std::vector<double> levels;
    ExtrapolationFit fit = ExtrapolationFit::kLinear;

    void validate() const;
};

/// Richardson weights: sum_j g_j = 1 and sum_j g_j c_j^k = 0 for k = 1..n.
/// Computed as Lagrange basis polynomials evaluated at zero, g_j = prod_{i != j} c_i / (c_i - c_j).
std::vector<double> richardson_coefficients(std::span<const double> levels);

/// Zero-noise estimate from values measured at spec.levels.
///   kRichardson: sum_j g_j values_j.
///   kLinear: least-squares line in c, evaluated at c = 0.
///   kExponential: a exp(-b c) fitted on log|values| with the common sign carried separately;
///   falls back to kLinear when the values change sign, touch zero, or the fit is not finite.
double zne(std::span<const double> values, const ExtrapolationSpec &spec);

/// Linear model over a feature schema, with an optional intercept (CDR only by default).
struct RegressionModel {
    std::vector<FeatureLabel> schema;
    std::vector<double> coefficients;
    std::optional<double> intercept;

    double predict(std::span<const double> features) const;
};

/// Ordinary least squares through a complete orthogonal decomposition. Directions with
/// relative pivot below 1e-10 are dropped, giving the minimum-norm solution for
/// collinear features. `ridge` > 0 adds a Tikhonov penalty on the non-intercept coefficients.
RegressionModel fit_regression(const TrainingSet &training, bool include_intercept, double ridge = 0.0);

/// a_1 x + a_2. Requires the single (c=1, m=1) feature and an intercept.
double mitigate_cdr(const RegressionModel &model, double noisy);

/// sum_j a_j x_j over noise levels. Requires m = 1 features only and no intercept.
double mitigate_vncdr(const RegressionModel &model, std::span<const double> noisy_by_level);

/// Virtual distillation's ratio estimate is already the mitigated value.
double mitigate_vd(double ratio_estimate);

/// sum_{j,m} d_{j,m} x_{j,m} over any (level x copies) schema. CGVD is the single-level case.
double mitigate_united(const RegressionModel &model, std::span<const double> features);

/// Closed-form VD attenuation under global depolarizing noise of strength p^j in dimension d:
///   f_{m,j} = 1 - d p^{mj} / ((d - 1) p^{mj} + (d - p^j (d - 1))^m).
/// Then Tr(rho^m X)/Tr(rho^m) = f_{m,j} Tr(psi X) + (1 - f_{m,j}) Tr(X) / d.
double global_depolarizing_f(int m, int j, double p, int d);

/// Richardson weights in the copy index with c_M = M, M = 1..max_copies.
std::vector<double> copy_extrapolation_coefficients(int max_copies);

/// Outer product g_j g_M of level and copy Richardson weights, laid out in
/// feature_schema(levels, max_copies) order.
std::vector<double> double_richardson_coefficients(std::span<const int> levels, int max_copies);

nlohmann::json model_to_json(const RegressionModel &model);
RegressionModel model_from_json(const nlohmann::json &j);

/// The training set restricted (and reordered) to `schema`. Every label must be present.
TrainingSet project_schema(const TrainingSet &training, std::span<const FeatureLabel> schema);

}  // namespace qem

#endif
