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

#ifndef QEMKIT_BENCH_H
#define QEMKIT_BENCH_H

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"
#include "qemkit/clifford.h"
#include "qemkit/mitigation.h"
#include "qemkit/noise.h"
#include "qemkit/shots.h"

namespace qem {

/// Per-method knobs. Defaults follow the benchmark protocol: linear ZNE on c in {1,2},
/// VD with 2 copies, vnCDR/UNITED on c in {1,2,3}, UNITED and CGVD up to 3 copies,
/// 100 near-Clifford candidates post-selected to 50, 10 kept non-Clifford RZ gates.
struct MethodSettings {
    ExtrapolationSpec zne{{1.0, 2.0}, ExtrapolationFit::kLinear};
    int vd_copies = 2;
    std::vector<int> vncdr_levels{1, 2, 3};
    std::vector<int> united_levels{1, 2, 3};
    int united_max_copies = 3;
    int cgvd_max_copies = 3;
    TrainingOptions training;
    double ridge = 0.0;
    bool cgvd_intercept = false;
};

struct ExperimentConfig {
    std::vector<int> qubits{4};
    /// Depth factors g; circuits have L = g Q layers.
    std::vector<int> depth_factors{1};
    int instances = 30;
    std::vector<int64_t> budgets{100'000, 1'000'000, 10'000'000, 100'000'000, 1'000'000'000, 10'000'000'000};
    std::vector<Method> methods{Method::kNoisy, Method::kZne, Method::kVd, Method::kCdr,
                                Method::kVncdr, Method::kCgvd, Method::kUnited};
    /// Dense ("ZIII") or sparse ("Z0") Pauli string.
    std::string observable = "Z0";
    uint64_t seed = 2022;
    /// Features are exact channel expectations; no shot noise.
    bool infinite_shots = false;
    /// Worker threads; 0 picks the hardware concurrency.
    int threads = 0;
    NoiseModel noise;
    MethodSettings settings;

    void validate() const;
};

nlohmann::json config_to_json(const ExperimentConfig &config);
/// Missing keys keep their defaults.
ExperimentConfig config_from_json(const nlohmann::json &j);

struct ReportRow {
    int qubits = 0;
    int depth_factor = 0;
    int layers = 0;
    int64_t budget = 0;
    int instance = 0;
    uint64_t instance_seed = 0;
    Method method = Method::kNoisy;
    /// Copy count for copy-sweep rows; 0 otherwise.
    int copies = 0;
    double exact = 0.0;
    double estimate = 0.0;
    double abs_error = 0.0;
    int64_t shots_used = 0;
    bool skipped = false;
    std::string note;
    std::optional<RegressionModel> model;
};

struct ErrorSummary {
    size_t count = 0;
    double mean_abs_error = 0.0;
    double max_abs_error = 0.0;
    /// Standard error of the mean across instances (0 for a single instance).
    double std_error = 0.0;
};

/// Mean, max and standard error of absolute errors. Throws on empty input.
ErrorSummary summarize_errors(std::span<const double> abs_errors);

struct MethodAggregate {
    int qubits = 0;
    int depth_factor = 0;
    int64_t budget = 0;
    Method method = Method::kNoisy;
    int copies = 0;
    ErrorSummary errors;
    size_t skipped = 0;
};

/// Groups rows by (Q, g, budget, method, copies) and summarizes the non-skipped ones.
std::vector<MethodAggregate> aggregate(std::span<const ReportRow> rows);

struct MitigationReport {
    ExperimentConfig config;
    std::vector<ReportRow> rows;
    std::vector<MethodAggregate> aggregates;
    std::vector<Circuit> circuits;

    const MethodAggregate *find(int qubits, int depth_factor, int64_t budget, Method method, int copies = 0) const;
};

/// Runs every (Q, g, instance) with every budget and method. Deterministic in config.seed
/// regardless of thread count.
MitigationReport run_experiment(const ExperimentConfig &config);

/// VD error versus copy number M in [min_copies, max_copies]. M = 1 rows are the plain noisy
/// estimate with the whole budget; M >= 2 rows split the budget over the two VD circuits.
MitigationReport copy_sweep(const ExperimentConfig &config, int min_copies, int max_copies);

struct OracleCheckResult {
    int circuits = 0;
    double global_p = 0.0;
    /// Circuits redrawn because no near-Clifford candidate had a nonzero exact value.
    int rejected = 0;
    /// Largest |mitigated - exact| per method over all circuits.
    std::vector<std::pair<Method, double>> max_errors;
    double max_error(Method method) const;
};

/// Global-depolarizing perfect-mitigation check with infinite-shot features. Circuits cycle
/// through Q = 2, 3, 4 with L = 2Q; circuits
/// whose training set is degenerate are redrawn and counted in `rejected`.
OracleCheckResult run_oracle_check(uint64_t seed, int circuits = 10, double global_p = 0.01);

/// results.csv columns: Q,g,L,budget,instance_seed,method,exact,estimate,abs_error,shots_used
/// (plus a copies column after method for copy sweeps). Skipped rows are omitted.
void write_results_csv(std::ostream &out, const MitigationReport &report, bool with_copies = false);
/// budget vs. mean/max error per method.
void write_curves_csv(std::ostream &out, const MitigationReport &report);
nlohmann::json summary_json(const MitigationReport &report);
nlohmann::json report_to_json(const MitigationReport &report);
MitigationReport report_from_json(const nlohmann::json &j);

/// Writes results.csv, summary.json, curves.csv, circuits.json, models.json and report.json.
void write_report_dir(const std::string &dir, const MitigationReport &report, bool with_copies = false);

/// Parses results.csv back into rows (method/copies/budget/error fields only).
std::vector<ReportRow> read_results_csv(std::istream &in);

}  // namespace qem

#endif
