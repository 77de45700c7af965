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

#include "qemkit/mitigation.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qem {

namespace {

/// Intercept and slope of the least-squares line through (x_k, y_k).
std::pair<double, double> fit_line(std::span<const double> x, std::span<const double> y) {
    const double n = static_cast<double>(x.size());
    double mx = 0;
    double my = 0;
    for (size_t k = 0; k < x.size(); k++) {
        mx += x[k];
        my += y[k];
    }
    mx /= n;
    my /= n;
    double sxx = 0;
    double sxy = 0;
    for (size_t k = 0; k < x.size(); k++) {
        sxx += (x[k] - mx) * (x[k] - mx);
        sxy += (x[k] - mx) * (y[k] - my);
    }
    double slope = sxy / sxx;
    return {my - slope * mx, slope};
}

void check_length(const RegressionModel &model, size_t n) {
    if (n != model.coefficients.size()) {
        throw std::invalid_argument(
            "Feature vector has " + std::to_string(n) + " entries; the model expects " +
            std::to_string(model.coefficients.size()) + ".");
    }
}

}  // namespace

void ExtrapolationSpec::validate() const {
    if (levels.empty() || levels.front() != 1.0) {
        throw std::invalid_argument("Noise levels must start at c_0 = 1.");
    }
    for (size_t k = 1; k < levels.size(); k++) {
        if (!(levels[k] > levels[k - 1])) {
            throw std::invalid_argument("Noise levels must be strictly increasing.");
        }
    }
}

std::vector<double> richardson_coefficients(std::span<const double> levels) {
    if (levels.empty()) {
        throw std::invalid_argument("Richardson extrapolation needs at least one level.");
    }
    std::vector<double> g(levels.size(), 1.0);
    for (size_t j = 0; j < levels.size(); j++) {
        for (size_t i = 0; i < levels.size(); i++) {
            if (i == j) {
                continue;
            }
            double gap = levels[i] - levels[j];
            if (gap == 0.0) {
                throw std::invalid_argument("Richardson system is singular: duplicate noise levels.");
            }
            g[j] *= levels[i] / gap;
        }
    }
    return g;
}

double zne(std::span<const double> values, const ExtrapolationSpec &spec) {
    spec.validate();
    if (values.size() != spec.levels.size()) {
        throw std::invalid_argument("ZNE needs exactly one value per noise level.");
    }
    switch (spec.fit) {
        case ExtrapolationFit::kRichardson: {
            auto g = richardson_coefficients(spec.levels);
            double acc = 0;
            for (size_t j = 0; j < g.size(); j++) {
                acc += g[j] * values[j];
            }
            return acc;
        }
        case ExtrapolationFit::kLinear:
        case ExtrapolationFit::kExponential: {
            if (values.size() < 2) {
                throw std::invalid_argument("Linear and exponential fits need at least 2 points.");
            }
            if (spec.fit == ExtrapolationFit::kExponential) {
                bool all_pos = std::all_of(values.begin(), values.end(), [](double v) { return v > 0; });
                bool all_neg = std::all_of(values.begin(), values.end(), [](double v) { return v < 0; });
                if (all_pos || all_neg) {
                    std::vector<double> logs;
                    for (double v : values) {
                        logs.push_back(std::log(std::abs(v)));
                    }
                    double est = std::exp(fit_line(spec.levels, logs).first);
                    if (std::isfinite(est)) {
                        return all_pos ? est : -est;
                    }
                }
            }
            return fit_line(spec.levels, values).first;
        }
    }
    throw std::invalid_argument("Unknown extrapolation fit.");
}

double RegressionModel::predict(std::span<const double> features) const {
    check_length(*this, features.size());
    double acc = intercept.value_or(0.0);
    for (size_t k = 0; k < features.size(); k++) {
        acc += coefficients[k] * features[k];
    }
    return acc;
}

RegressionModel fit_regression(const TrainingSet &training, bool include_intercept, double ridge) {
    if (training.size() == 0) {
        throw std::invalid_argument("Cannot fit a regression on an empty training set.");
    }
    if (ridge < 0) {
        throw std::invalid_argument("Ridge parameter must be non-negative.");
    }
    const Eigen::Index rows = static_cast<Eigen::Index>(training.size());
    const Eigen::Index nf = static_cast<Eigen::Index>(training.schema.size());
    const Eigen::Index cols = nf + (include_intercept ? 1 : 0);
    if (rows < cols) {
        throw std::invalid_argument(
            "Training set has " + std::to_string(rows) + " rows but the model has " + std::to_string(cols) +
            " parameters.");
    }
    Eigen::MatrixXd a(rows, cols);
    Eigen::VectorXd y(rows);
    for (Eigen::Index r = 0; r < rows; r++) {
        const auto &x = training.features[static_cast<size_t>(r)];
        if (static_cast<Eigen::Index>(x.size()) != nf) {
            throw std::invalid_argument("Training row does not match the feature schema.");
        }
        for (Eigen::Index c = 0; c < nf; c++) {
            a(r, c) = x[static_cast<size_t>(c)];
        }
        if (include_intercept) {
            a(r, nf) = 1.0;
        }
        y(r) = training.targets[static_cast<size_t>(r)];
    }

    Eigen::VectorXd beta;
    if (ridge > 0) {
        Eigen::MatrixXd normal = a.transpose() * a;
        for (Eigen::Index c = 0; c < nf; c++) {
            normal(c, c) += ridge;
        }
        beta = normal.ldlt().solve(a.transpose() * y);
    } else {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
        cod.setThreshold(1e-10);
        cod.compute(a);
        beta = cod.solve(y);
    }

    RegressionModel model;
    model.schema = training.schema;
    model.coefficients.assign(beta.data(), beta.data() + nf);
    if (include_intercept) {
        model.intercept = beta(nf);
    }
    return model;
}

double mitigate_cdr(const RegressionModel &model, double noisy) {
    if (model.schema.size() != 1 || model.schema[0] != FeatureLabel{1, 1} || !model.intercept) {
        throw std::invalid_argument("CDR needs a model over the single (c=1, m=1) feature with an intercept.");
    }
    double x[1] = {noisy};
    return model.predict(x);
}

double mitigate_vncdr(const RegressionModel &model, std::span<const double> noisy_by_level) {
    for (const FeatureLabel &label : model.schema) {
        if (label.copies != 1) {
            throw std::invalid_argument("vnCDR models use single-copy features only.");
        }
    }
    if (model.intercept) {
        throw std::invalid_argument("vnCDR models have no intercept.");
    }
    return model.predict(noisy_by_level);
}

double mitigate_vd(double ratio_estimate) {
    return ratio_estimate;
}

double mitigate_united(const RegressionModel &model, std::span<const double> features) {
    return model.predict(features);
}

double global_depolarizing_f(int m, int j, double p, int d) {
    if (m < 1 || j < 1 || d < 2 || !(p >= 0.0 && p < 1.0)) {
        throw std::invalid_argument("global_depolarizing_f needs m, j >= 1, d >= 2 and p in [0, 1).");
    }
    const double dd = d;
    const double q = std::pow(p, j);
    const double qm = std::pow(q, m);
    const double dominant = std::pow(dd - q * (dd - 1.0), m);
    return 1.0 - dd * qm / ((dd - 1.0) * qm + dominant);
}

std::vector<double> copy_extrapolation_coefficients(int max_copies) {
    if (max_copies < 1) {
        throw std::invalid_argument("Copy extrapolation needs at least one copy.");
    }
    std::vector<double> c;
    for (int m = 1; m <= max_copies; m++) {
        c.push_back(m);
    }
    return richardson_coefficients(c);
}

std::vector<double> double_richardson_coefficients(std::span<const int> levels, int max_copies) {
    std::vector<double> lv(levels.begin(), levels.end());
    auto gl = richardson_coefficients(lv);
    auto gm = copy_extrapolation_coefficients(max_copies);
    std::vector<double> out;
    for (double a : gl) {
        for (double b : gm) {
            out.push_back(a * b);
        }
    }
    return out;
}

nlohmann::json model_to_json(const RegressionModel &model) {
    nlohmann::json schema = nlohmann::json::array();
    for (const FeatureLabel &label : model.schema) {
        schema.push_back({{"level", label.level}, {"copies", label.copies}});
    }
    nlohmann::json j = {{"schema", schema}, {"coefficients", model.coefficients}};
    j["intercept"] = model.intercept ? nlohmann::json(*model.intercept) : nlohmann::json(nullptr);
    return j;
}

RegressionModel model_from_json(const nlohmann::json &j) {
    RegressionModel model;
    for (const auto &s : j.at("schema")) {
        model.schema.push_back(FeatureLabel{s.at("level").get<int>(), s.at("copies").get<int>()});
    }
    model.coefficients = j.at("coefficients").get<std::vector<double>>();
    if (j.contains("intercept") && !j.at("intercept").is_null()) {
        model.intercept = j.at("intercept").get<double>();
    }
    if (model.coefficients.size() != model.schema.size()) {
        throw std::invalid_argument("Model coefficient count does not match its schema.");
    }
    return model;
}

TrainingSet project_schema(const TrainingSet &training, std::span<const FeatureLabel> schema) {
    std::vector<size_t> columns;
    for (const FeatureLabel &label : schema) {
        auto it = std::find(training.schema.begin(), training.schema.end(), label);
        if (it == training.schema.end()) {
            throw std::invalid_argument("Feature " + label.name() + " is not in the training schema.");
        }
        columns.push_back(static_cast<size_t>(it - training.schema.begin()));
    }
    TrainingSet out;
    out.schema.assign(schema.begin(), schema.end());
    out.targets = training.targets;
    out.seeds = training.seeds;
    for (const auto &row : training.features) {
        std::vector<double> r;
        for (size_t c : columns) {
            r.push_back(row[c]);
        }
        out.features.push_back(std::move(r));
    }
    return out;
}

}  // namespace qem
