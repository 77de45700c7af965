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

#include "qemkit/bench.h"

#include <filesystem>
#include <gtest/gtest.h>
#include <sstream>

#include "qemkit/simulate.h"

using namespace qem;

namespace {

ExperimentConfig small_config() {
    ExperimentConfig c;
    c.qubits = {3};
    c.instances = 3;
    c.budgets = {100'000, 100'000'000};
    c.settings.training.candidates = 20;
    c.settings.training.select = 10;
    c.threads = 1;
    return c;
}

}  // namespace

TEST(bench, summarize_examples) {
    std::vector<double> one{0.25};
    ErrorSummary s = summarize_errors(one);
    EXPECT_EQ(s.mean_abs_error, 0.25);
    EXPECT_EQ(s.max_abs_error, 0.25);
    EXPECT_EQ(s.std_error, 0.0);
    std::vector<double> two{0.1, 0.3};
    ErrorSummary t = summarize_errors(two);
    EXPECT_NEAR(t.mean_abs_error, 0.2, 1e-16);
    EXPECT_EQ(t.max_abs_error, 0.3);
    EXPECT_NEAR(t.std_error, 0.1, 1e-15);
    EXPECT_THROW(summarize_errors(std::vector<double>{}), std::invalid_argument);
    EXPECT_THROW(aggregate(std::vector<ReportRow>{}), std::invalid_argument);
}

TEST(bench, aggregate_groups_and_skips) {
    std::vector<ReportRow> rows(4);
    rows[0].method = Method::kZne;
    rows[0].abs_error = 0.1;
    rows[1].method = Method::kZne;
    rows[1].abs_error = 0.3;
    rows[2].method = Method::kZne;
    rows[2].skipped = true;
    rows[3].method = Method::kVd;
    rows[3].abs_error = 0.2;
    std::vector<MethodAggregate> a = aggregate(rows);
    ASSERT_EQ(a.size(), 2u);
    const MethodAggregate &zne = a[0].method == Method::kZne ? a[0] : a[1];
    EXPECT_EQ(zne.errors.count, 2u);
    EXPECT_EQ(zne.skipped, 1u);
    EXPECT_NEAR(zne.errors.mean_abs_error, 0.2, 1e-16);
}

TEST(bench, config_json_round_trip) {
    ExperimentConfig c = small_config();
    c.noise = NoiseModel::global_depolarizing(0.02);
    c.settings.zne = ExtrapolationSpec{{1, 2, 3}, ExtrapolationFit::kRichardson};
    c.settings.cgvd_intercept = true;
    ExperimentConfig back = config_from_json(nlohmann::json::parse(config_to_json(c).dump()));
    EXPECT_EQ(config_to_json(back).dump(), config_to_json(c).dump());

    ExperimentConfig partial = config_from_json(nlohmann::json::parse(R"({"qubits": [5], "budgets": [1e10]})"));
    EXPECT_EQ(partial.qubits, std::vector<int>{5});
    EXPECT_EQ(partial.budgets, std::vector<int64_t>{10'000'000'000});
    EXPECT_EQ(partial.instances, 30);
    EXPECT_EQ(partial.methods.size(), 7u);

    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"qubits": [1]})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"qubits": [13]})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"methods": ["pec"]})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"zne": {"levels": [1, 1.5]}})")), std::invalid_argument);
    EXPECT_THROW(config_from_json(nlohmann::json::parse(R"({"vncdr": {"levels": [1, 4]}})")), std::invalid_argument);
}

TEST(bench, deterministic_across_threads) {
    ExperimentConfig c = small_config();
    MitigationReport a = run_experiment(c);
    c.threads = 3;
    MitigationReport b = run_experiment(c);
    c.threads = 1;
    MitigationReport again = run_experiment(c);
    // The thread count is part of the config, so compare everything but it.
    EXPECT_EQ(report_to_json(a)["rows"].dump(), report_to_json(b)["rows"].dump());
    EXPECT_EQ(report_to_json(a).dump(), report_to_json(again).dump());
    EXPECT_EQ(a.rows.size(), 3u * 2u * 7u);
}

TEST(bench, shot_accounting) {
    MitigationReport r = run_experiment(small_config());
    for (const ReportRow &row : r.rows) {
        EXPECT_LE(row.shots_used, row.budget);
        if (!row.skipped) {
            EXPECT_GT(row.shots_used, 0);
            EXPECT_NEAR(row.abs_error, std::abs(row.estimate - row.exact), 0.0);
            EXPECT_LE(std::abs(row.estimate), 1.0 + 1e-9) << method_name(row.method);
        }
        EXPECT_EQ(row.layers, 3);
    }
}

TEST(bench, tiny_budget_rows_are_skipped) {
    ExperimentConfig c = small_config();
    c.instances = 1;
    c.budgets = {10};
    MitigationReport r = run_experiment(c);
    for (const ReportRow &row : r.rows) {
        bool too_small = row.method == Method::kCdr || row.method == Method::kVncdr || row.method == Method::kCgvd ||
                         row.method == Method::kUnited;
        if (row.method != Method::kVd) {
            EXPECT_EQ(row.skipped, too_small) << method_name(row.method);
        }
        if (row.skipped) {
            EXPECT_EQ(row.shots_used, 0);
            EXPECT_FALSE(row.note.empty());
        }
    }
    std::stringstream csv;
    write_results_csv(csv, r);
    EXPECT_GE(read_results_csv(csv).size(), 2u);
}

TEST(bench, csv_audit_round_trip) {
    ExperimentConfig c = small_config();
    c.instances = 30;
    c.qubits = {2};
    c.budgets = {1'000'000};
    c.methods = {Method::kNoisy, Method::kZne, Method::kVd};
    MitigationReport r = run_experiment(c);
    std::stringstream csv;
    write_results_csv(csv, r);
    std::vector<ReportRow> rows = read_results_csv(csv);
    ASSERT_EQ(rows.size(), r.rows.size());
    std::vector<MethodAggregate> again = aggregate(rows);
    ASSERT_EQ(again.size(), r.aggregates.size());
    for (size_t k = 0; k < again.size(); k++) {
        EXPECT_EQ(again[k].method, r.aggregates[k].method);
        EXPECT_EQ(again[k].errors.mean_abs_error, r.aggregates[k].errors.mean_abs_error);
        EXPECT_EQ(again[k].errors.max_abs_error, r.aggregates[k].errors.max_abs_error);
        EXPECT_EQ(again[k].errors.std_error, r.aggregates[k].errors.std_error);
    }
    std::string header;
    std::stringstream csv2;
    write_results_csv(csv2, r);
    std::getline(csv2, header);
    EXPECT_EQ(header, "Q,g,L,budget,instance_seed,method,exact,estimate,abs_error,shots_used");

    MitigationReport back = report_from_json(nlohmann::json::parse(report_to_json(r).dump()));
    ASSERT_EQ(back.rows.size(), r.rows.size());
    for (size_t k = 0; k < r.rows.size(); k++) {
        EXPECT_EQ(back.rows[k].estimate, r.rows[k].estimate);
        EXPECT_EQ(back.rows[k].instance_seed, r.rows[k].instance_seed);
    }
}

TEST(bench, global_depolarizing_pipeline_is_perfect) {
    ExperimentConfig c = small_config();
    c.noise = NoiseModel::global_depolarizing(0.01);
    c.infinite_shots = true;
    c.budgets = {1'000'000'000};
    c.methods = {Method::kCdr, Method::kVncdr, Method::kCgvd, Method::kUnited};
    MitigationReport r = run_experiment(c);
    for (const ReportRow &row : r.rows) {
        if (!row.skipped) {
            EXPECT_LT(row.abs_error, 1e-8) << method_name(row.method);
            ASSERT_TRUE(row.model.has_value());
        }
    }
}

TEST(bench, noiseless_errors_are_shot_noise) {
    ExperimentConfig c = small_config();
    c.noise = NoiseModel::noiseless();
    c.budgets = {10'000'000'000};
    c.methods = {Method::kNoisy, Method::kZne, Method::kVd};
    MitigationReport r = run_experiment(c);
    for (const ReportRow &row : r.rows) {
        EXPECT_LT(row.abs_error, 1e-3);
    }
    c.infinite_shots = true;
    for (const ReportRow &row : run_experiment(c).rows) {
        EXPECT_LT(row.abs_error, 1e-12);
    }
}

TEST(bench, copy_sweep_global_matches_closed_form) {
    ExperimentConfig c = small_config();
    c.qubits = {2};
    c.noise = NoiseModel::global_depolarizing(0.05);
    c.infinite_shots = true;
    MitigationReport r = copy_sweep(c, 1, 6);
    EXPECT_EQ(r.rows.size(), 3u * 2u * 6u);
    for (const ReportRow &row : r.rows) {
        Circuit circ = build_random_circuit(2, 2, row.instance_seed);
        double k = static_cast<double>(circ.gates.size());
        // k applications of (1-p) compose to strength 1 - (1-p)^k.
        double p_eff = 1.0 - std::pow(0.95, k);
        double f = global_depolarizing_f(row.copies, 1, p_eff, 4);
        EXPECT_NEAR(row.abs_error, (1 - f) * std::abs(row.exact), 1e-10);
        EXPECT_EQ(row.method, row.copies == 1 ? Method::kNoisy : Method::kVd);
    }
    EXPECT_THROW(copy_sweep(c, 0, 3), std::invalid_argument);
    EXPECT_THROW(copy_sweep(c, 1, 7), std::invalid_argument);
}

TEST(bench, report_dir) {
    ExperimentConfig c = small_config();
    c.instances = 1;
    MitigationReport r = run_experiment(c);
    std::string dir = (std::filesystem::temp_directory_path() / "qemkit_report_dir_test").string();
    std::filesystem::remove_all(dir);
    write_report_dir(dir, r);
    for (const char *name : {"results.csv", "summary.json", "curves.csv", "circuits.json", "models.json", "report.json"}) {
        EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(dir) / name)) << name;
    }
    std::filesystem::remove_all(dir);
}

TEST(bench, oracle_check_small) {
    OracleCheckResult r = run_oracle_check(7, 3, 0.01);
    EXPECT_EQ(r.circuits, 3);
    for (const auto &[m, e] : r.max_errors) {
        EXPECT_LT(e, 1e-8) << method_name(m);
    }
    EXPECT_THROW(r.max_error(Method::kZne), std::invalid_argument);
}
