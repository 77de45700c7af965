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

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "qemkit/bench.h"

namespace {

qem::ExperimentConfig load_config(const std::string &path) {
    if (path.empty()) {
        return qem::ExperimentConfig{};
    }
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("Cannot open config file '" + path + "'.");
    }
    return qem::config_from_json(nlohmann::json::parse(in));
}

void print_curves(const qem::MitigationReport &report) {
    qem::write_curves_csv(std::cout, report);
}

nlohmann::json load_report(const std::string &dir) {
    std::ifstream in(dir + "/report.json");
    if (!in) {
        throw std::invalid_argument("No report.json under '" + dir + "'.");
    }
    return nlohmann::json::parse(in);
}

}  // namespace

int main(int argc, char **argv) {
    CLI::App app{"Error-mitigation benchmark harness"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = "out";
    int threads = -1;
    bool infinite = false;

    auto *run = app.add_subcommand("run", "Run the full method x budget benchmark");
    run->add_option("--config", config_path, "JSON experiment config");
    run->add_option("--out", out_dir, "Output directory");
    run->add_option("--threads", threads, "Worker threads (0 = hardware)");
    run->add_flag("--infinite-shots", infinite, "Use exact feature values");

    int min_copies = 1;
    int max_copies = 6;
    auto *sweep = app.add_subcommand("copy-sweep", "VD error versus number of copies");
    sweep->add_option("--config", config_path, "JSON experiment config");
    sweep->add_option("--out", out_dir, "Output directory");
    sweep->add_option("--threads", threads, "Worker threads (0 = hardware)");
    sweep->add_option("--min-copies", min_copies)->check(CLI::Range(1, 6));
    sweep->add_option("--max-copies", max_copies)->check(CLI::Range(1, 6));

    uint64_t oracle_seed = 2022;
    int oracle_circuits = 10;
    double oracle_p = 0.01;
    auto *oracle = app.add_subcommand("oracle-check", "Perfect-mitigation check under global depolarizing noise");
    oracle->add_option("--seed", oracle_seed);
    oracle->add_option("--circuits", oracle_circuits)->check(CLI::PositiveNumber);
    oracle->add_option("--p", oracle_p)->check(CLI::Range(0.0, 1.0));

    std::string in_dir;
    std::string format = "csv";
    std::string export_out;
    auto *exp = app.add_subcommand("export", "Re-emit a stored report");
    exp->add_option("--in", in_dir, "Report directory")->required();
    exp->add_option("--format", format)->check(CLI::IsMember({"csv", "json"}));
    exp->add_option("--out", export_out, "Output file (default stdout)");

    int64_t train_shots = 0;
    auto *train = app.add_subcommand("training-set", "Dump the sampled training set of one instance as CSV");
    train->add_option("--config", config_path, "JSON experiment config");
    train->add_option("--shots", train_shots, "Shots per feature circuit (0 = exact)");
    train->add_option("--out", export_out, "Output file (default stdout)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*run || *sweep) {
            qem::ExperimentConfig config = load_config(config_path);
            if (threads >= 0) {
                config.threads = threads;
            }
            if (infinite) {
                config.infinite_shots = true;
            }
            bool is_sweep = static_cast<bool>(*sweep);
            qem::MitigationReport report =
                is_sweep ? qem::copy_sweep(config, min_copies, max_copies) : qem::run_experiment(config);
            qem::write_report_dir(out_dir, report, is_sweep);
            print_curves(report);
        } else if (*oracle) {
            qem::OracleCheckResult r = qem::run_oracle_check(oracle_seed, oracle_circuits, oracle_p);
            bool ok = true;
            std::cout << "circuits=" << r.circuits << " rejected=" << r.rejected << " p=" << r.global_p << '\n';
            for (const auto &[m, e] : r.max_errors) {
                bool pass = e < 1e-8;
                ok = ok && pass;
                std::cout << qem::method_name(m) << " max_abs_error=" << e << (pass ? " PASS" : " FAIL") << '\n';
            }
            return ok ? 0 : 1;
        } else if (*exp) {
            qem::MitigationReport report = qem::report_from_json(load_report(in_dir));
            bool with_copies = false;
            for (const auto &r : report.rows) {
                with_copies = with_copies || r.copies != 0;
            }
            std::ofstream file;
            if (!export_out.empty()) {
                file.open(export_out);
                if (!file) {
                    throw std::invalid_argument("Cannot write '" + export_out + "'.");
                }
            }
            std::ostream &out = export_out.empty() ? std::cout : file;
            if (format == "csv") {
                qem::write_results_csv(out, report, with_copies);
            } else {
                out << qem::summary_json(report).dump(2) << '\n';
            }
        } else if (*train) {
            qem::ExperimentConfig config = load_config(config_path);
            int q = config.qubits.front();
            int g = config.depth_factors.front();
            uint64_t seed = qem::derive_seed(config.seed, {static_cast<uint64_t>(q), static_cast<uint64_t>(g), 0});
            qem::Circuit circuit = qem::build_random_circuit(q, g * q, seed);
            qem::PauliObservable obs = qem::PauliObservable::parse(config.observable, q);
            std::optional<int64_t> shots;
            if (train_shots > 0) {
                shots = train_shots;
            }
            qem::TrainingSet set = qem::build_training_set(
                circuit, obs, config.noise, config.settings.training, config.settings.united_levels,
                config.settings.united_max_copies, shots, seed);
            std::ofstream file;
            if (!export_out.empty()) {
                file.open(export_out);
            }
            qem::write_training_csv(export_out.empty() ? std::cout : file, set);
        }
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 0;
}
