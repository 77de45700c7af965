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

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <map>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <tuple>

#include "qemkit/simulate.h"

namespace qem {

namespace {

constexpr uint64_t kScaleKey = 0x5CA1E;
constexpr uint64_t kTrainKey = 0x7EA1;
constexpr uint64_t kTrainSampleKey = 1;
constexpr uint64_t kTargetSampleKey = 2;

std::string fmt_double(double v) {
    std::ostringstream ss;
    ss << std::setprecision(17) << v;
    return ss.str();
}

std::vector<int> zne_levels(const ExtrapolationSpec &spec) {
    std::vector<int> out;
    for (double c : spec.levels) {
        int ci = static_cast<int>(std::lround(c));
        if (static_cast<double>(ci) != c) {
            throw std::invalid_argument("ZNE noise levels must be integers realizable by gate scaling.");
        }
        out.push_back(ci);
    }
    return out;
}

void check_levels(const std::vector<int> &levels, const char *what) {
    if (levels.empty() || levels.front() != 1) {
        throw std::invalid_argument(std::string(what) + " levels must start at 1.");
    }
    for (size_t k = 0; k < levels.size(); k++) {
        if (levels[k] < 1 || levels[k] > 3 || (k > 0 && levels[k] <= levels[k - 1])) {
            throw std::invalid_argument(std::string(what) + " levels must be increasing values in {1, 2, 3}.");
        }
    }
}

bool is_regression(Method m) {
    return m == Method::kCdr || m == Method::kVncdr || m == Method::kCgvd || m == Method::kUnited;
}

std::vector<int> sorted_union(std::initializer_list<const std::vector<int> *> lists) {
    std::set<int> s;
    for (const auto *l : lists) {
        s.insert(l->begin(), l->end());
    }
    return {s.begin(), s.end()};
}

/// Everything about one circuit of interest that does not depend on the budget.
struct InstanceContext {
    int qubits = 0;
    int depth_factor = 0;
    int instance = 0;
    uint64_t seed = 0;
    Circuit circuit;
    PauliObservable obs;
    double exact = 0.0;
    ExactFeatures features;
    std::optional<TrainingPool> pool;
    std::string pool_error;
};

struct MethodOutcome {
    double estimate = 0.0;
    int64_t shots_used = 0;
    std::optional<RegressionModel> model;
};

std::optional<int64_t> shots_for(const ExperimentConfig &config, const ShotBudget &b) {
    if (config.infinite_shots) {
        return std::nullopt;
    }
    return b.per_circuit;
}

InstanceContext prepare_instance(
    const ExperimentConfig &config, int qubits, int depth_factor, int instance, bool need_training) {
    const MethodSettings &s = config.settings;
    InstanceContext ctx;
    ctx.qubits = qubits;
    ctx.depth_factor = depth_factor;
    ctx.instance = instance;
    ctx.seed = derive_seed(
        config.seed,
        {static_cast<uint64_t>(qubits), static_cast<uint64_t>(depth_factor), static_cast<uint64_t>(instance)});
    ctx.circuit = build_random_circuit(qubits, depth_factor * qubits, ctx.seed);
    ctx.obs = PauliObservable::parse(config.observable, qubits);
    ctx.exact = simulate_exact(ctx.circuit, ctx.obs);

    std::vector<int> zl = zne_levels(s.zne);
    std::vector<int> levels = sorted_union({&zl, &s.vncdr_levels, &s.united_levels});
    int copies = std::max({s.vd_copies, s.united_max_copies, s.cgvd_max_copies});
    ctx.features = evaluate_exact_features(
        ctx.circuit, config.noise, ctx.obs, levels, copies, derive_seed(ctx.seed, {kScaleKey}));

    if (need_training) {
        std::vector<int> one{1};
        std::vector<int> train_levels = sorted_union({&one, &s.vncdr_levels, &s.united_levels});
        int train_copies = std::max(s.united_max_copies, s.cgvd_max_copies);
        try {
            ctx.pool = build_training_pool(
                ctx.circuit, ctx.obs, config.noise, s.training, train_levels, train_copies,
                derive_seed(ctx.seed, {kTrainKey}));
        } catch (const DegenerateTrainingSet &e) {
            ctx.pool_error = e.what();
        }
    }
    return ctx;
}

MethodOutcome evaluate_method(
    Method method, const InstanceContext &ctx, const ExperimentConfig &config, int64_t budget, uint64_t seed) {
    const MethodSettings &s = config.settings;
    MethodOutcome out;

    auto regression = [&](Method m, std::vector<FeatureLabel> schema, int n_levels, int max_copies,
                          bool intercept) {
        if (!ctx.pool) {
            throw DegenerateTrainingSet(ctx.pool_error);
        }
        int nt = static_cast<int>(ctx.pool->circuits.size());
        ShotBudget b = allocate_budget(m, budget, n_levels, nt, max_copies);
        auto shots = shots_for(config, b);
        TrainingSet ts = sample_training_set(*ctx.pool, schema, shots, derive_seed(seed, {kTrainSampleKey}));
        RegressionModel model = fit_regression(ts, intercept, s.ridge);
        auto x = sample_features(ctx.features, schema, shots, derive_seed(seed, {kTargetSampleKey}));
        double est = 0.0;
        switch (m) {
            case Method::kCdr:
                est = mitigate_cdr(model, x[0]);
                break;
            case Method::kVncdr:
                est = mitigate_vncdr(model, x);
                break;
            default:
                est = mitigate_united(model, x);
                break;
        }
        out.estimate = est;
        out.shots_used = b.used();
        out.model = std::move(model);
    };

    switch (method) {
        case Method::kNoisy: {
            ShotBudget b = allocate_budget(method, budget, 1, 1, 1);
            FeatureLabel label{1, 1};
            out.estimate =
                sample_features(ctx.features, std::span(&label, 1), shots_for(config, b), seed)[0];
            out.shots_used = b.used();
            break;
        }
        case Method::kZne: {
            std::vector<int> zl = zne_levels(s.zne);
            ShotBudget b = allocate_budget(method, budget, static_cast<int>(zl.size()), 1, 1);
            std::vector<FeatureLabel> schema = feature_schema(zl, 1);
            auto values = sample_features(ctx.features, schema, shots_for(config, b), seed);
            out.estimate = zne(values, s.zne);
            out.shots_used = b.used();
            break;
        }
        case Method::kVd: {
            ShotBudget b = allocate_budget(method, budget, 1, 1, s.vd_copies);
            FeatureLabel label{1, s.vd_copies};
            out.estimate = mitigate_vd(
                sample_features(ctx.features, std::span(&label, 1), shots_for(config, b), seed)[0]);
            out.shots_used = b.used();
            break;
        }
        case Method::kCdr:
            regression(method, {FeatureLabel{1, 1}}, 1, 1, true);
            break;
        case Method::kVncdr:
            regression(
                method, feature_schema(s.vncdr_levels, 1), static_cast<int>(s.vncdr_levels.size()), 1, false);
            break;
        case Method::kCgvd: {
            std::vector<int> one{1};
            regression(method, feature_schema(one, s.cgvd_max_copies), 1, s.cgvd_max_copies, s.cgvd_intercept);
            break;
        }
        case Method::kUnited:
            regression(
                method, feature_schema(s.united_levels, s.united_max_copies),
                static_cast<int>(s.united_levels.size()), s.united_max_copies, false);
            break;
    }
    return out;
}

ReportRow base_row(const InstanceContext &ctx, int64_t budget, Method method) {
    ReportRow row;
    row.qubits = ctx.qubits;
    row.depth_factor = ctx.depth_factor;
    row.layers = ctx.circuit.layers;
    row.budget = budget;
    row.instance = ctx.instance;
    row.instance_seed = ctx.seed;
    row.method = method;
    row.exact = ctx.exact;
    return row;
}

struct Task {
    int qubits;
    int depth_factor;
    int instance;
};

/// Runs `work` over every task on a small thread pool; results keep task order.
template <typename Fn>
std::vector<std::vector<ReportRow>> run_tasks(const std::vector<Task> &tasks, int threads, Fn work) {
    std::vector<std::vector<ReportRow>> results(tasks.size());
    std::atomic<size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    auto worker = [&]() {
        while (true) {
            size_t k = next.fetch_add(1);
            if (k >= tasks.size()) {
                return;
            }
            try {
                results[k] = work(tasks[k]);
            } catch (...) {
                std::lock_guard<std::mutex> lock(failure_mutex);
                if (!failure) {
                    failure = std::current_exception();
                }
            }
        }
    };
    int n = threads > 0 ? threads : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    n = std::min<int>(n, static_cast<int>(std::max<size_t>(1, tasks.size())));
    {
        std::vector<std::jthread> pool;
        for (int t = 1; t < n; t++) {
            pool.emplace_back(worker);
        }
        worker();
    }
    if (failure) {
        std::rethrow_exception(failure);
    }
    return results;
}

std::vector<Task> all_tasks(const ExperimentConfig &config) {
    std::vector<Task> tasks;
    for (int q : config.qubits) {
        for (int g : config.depth_factors) {
            for (int i = 0; i < config.instances; i++) {
                tasks.push_back(Task{q, g, i});
            }
        }
    }
    return tasks;
}

nlohmann::json row_to_json(const ReportRow &r) {
    nlohmann::json j = {
        {"Q", r.qubits},
        {"g", r.depth_factor},
        {"L", r.layers},
        {"budget", r.budget},
        {"instance", r.instance},
        {"instance_seed", r.instance_seed},
        {"method", std::string(method_name(r.method))},
        {"copies", r.copies},
        {"exact", r.exact},
        {"estimate", r.estimate},
        {"abs_error", r.abs_error},
        {"shots_used", r.shots_used},
        {"skipped", r.skipped},
        {"note", r.note},
    };
    return j;
}

ReportRow row_from_json(const nlohmann::json &j) {
    ReportRow r;
    r.qubits = j.at("Q").get<int>();
    r.depth_factor = j.at("g").get<int>();
    r.layers = j.at("L").get<int>();
    r.budget = j.at("budget").get<int64_t>();
    r.instance = j.value("instance", 0);
    r.instance_seed = j.at("instance_seed").get<uint64_t>();
    r.method = parse_method(j.at("method").get<std::string>());
    r.copies = j.value("copies", 0);
    r.exact = j.at("exact").get<double>();
    r.estimate = j.at("estimate").get<double>();
    r.abs_error = j.at("abs_error").get<double>();
    r.shots_used = j.at("shots_used").get<int64_t>();
    r.skipped = j.value("skipped", false);
    r.note = j.value("note", std::string());
    return r;
}

nlohmann::json aggregate_to_json(const MethodAggregate &a) {
    return {
        {"Q", a.qubits},
        {"g", a.depth_factor},
        {"budget", a.budget},
        {"method", std::string(method_name(a.method))},
        {"copies", a.copies},
        {"count", a.errors.count},
        {"mean_abs_error", a.errors.mean_abs_error},
        {"max_abs_error", a.errors.max_abs_error},
        {"std_error", a.errors.std_error},
        {"skipped", a.skipped},
    };
}

}  // namespace

void ExperimentConfig::validate() const {
    if (instances < 1) {
        throw std::invalid_argument("instances must be at least 1.");
    }
    if (qubits.empty() || depth_factors.empty() || budgets.empty() || methods.empty()) {
        throw std::invalid_argument("qubits, depth_factors, budgets and methods must be non-empty.");
    }
    for (int q : qubits) {
        if (q < 2 || q > kMaxQubits) {
            throw std::invalid_argument("Qubit counts must lie in [2, " + std::to_string(kMaxQubits) + "].");
        }
    }
    for (int g : depth_factors) {
        if (g < 1) {
            throw std::invalid_argument("Depth factors must be positive.");
        }
    }
    for (int64_t b : budgets) {
        if (b < 1) {
            throw std::invalid_argument("Budgets must be positive.");
        }
    }
    noise.validate();
    settings.zne.validate();
    check_levels(zne_levels(settings.zne), "ZNE");
    check_levels(settings.vncdr_levels, "vnCDR");
    check_levels(settings.united_levels, "UNITED");
    if (settings.vd_copies < 2 || settings.united_max_copies < 1 || settings.cgvd_max_copies < 1) {
        throw std::invalid_argument("VD needs at least 2 copies; UNITED/CGVD at least 1.");
    }
    if (settings.training.select < 1 || settings.training.select > settings.training.candidates ||
        settings.training.keep_non_clifford < 0) {
        throw std::invalid_argument("Training options must satisfy 1 <= select <= candidates, keep >= 0.");
    }
}

nlohmann::json config_to_json(const ExperimentConfig &c) {
    std::vector<std::string> methods;
    for (Method m : c.methods) {
        methods.emplace_back(method_name(m));
    }
    const char *fit = c.settings.zne.fit == ExtrapolationFit::kLinear        ? "linear"
                      : c.settings.zne.fit == ExtrapolationFit::kRichardson ? "richardson"
                                                                             : "exponential";
    return {
        {"qubits", c.qubits},
        {"depth_factors", c.depth_factors},
        {"instances", c.instances},
        {"budgets", c.budgets},
        {"methods", methods},
        {"observable", c.observable},
        {"seed", c.seed},
        {"infinite_shots", c.infinite_shots},
        {"threads", c.threads},
        {"noise", noise_to_json(c.noise)},
        {"zne", {{"levels", c.settings.zne.levels}, {"fit", fit}}},
        {"vd", {{"copies", c.settings.vd_copies}}},
        {"vncdr", {{"levels", c.settings.vncdr_levels}}},
        {"united", {{"levels", c.settings.united_levels}, {"max_copies", c.settings.united_max_copies}}},
        {"cgvd", {{"max_copies", c.settings.cgvd_max_copies}, {"intercept", c.settings.cgvd_intercept}}},
        {"training",
         {{"candidates", c.settings.training.candidates},
          {"select", c.settings.training.select},
          {"keep_non_clifford", c.settings.training.keep_non_clifford}}},
        {"regression", {{"ridge", c.settings.ridge}}},
    };
}

ExperimentConfig config_from_json(const nlohmann::json &j) {
    ExperimentConfig c;
    c.qubits = j.value("qubits", c.qubits);
    c.depth_factors = j.value("depth_factors", c.depth_factors);
    c.instances = j.value("instances", c.instances);
    if (j.contains("budgets")) {
        c.budgets.clear();
        for (const auto &b : j.at("budgets")) {
            // Accept 1e10-style floating literals.
            c.budgets.push_back(b.is_number_integer() ? b.get<int64_t>() : std::llround(b.get<double>()));
        }
    }
    if (j.contains("methods")) {
        c.methods.clear();
        for (const auto &m : j.at("methods")) {
            c.methods.push_back(parse_method(m.get<std::string>()));
        }
    }
    c.observable = j.value("observable", c.observable);
    c.seed = j.value("seed", c.seed);
    c.infinite_shots = j.value("infinite_shots", c.infinite_shots);
    c.threads = j.value("threads", c.threads);
    if (j.contains("noise")) {
        c.noise = noise_from_json(j.at("noise"));
    }
    MethodSettings &s = c.settings;
    if (j.contains("zne")) {
        const auto &z = j.at("zne");
        s.zne.levels = z.value("levels", s.zne.levels);
        std::string fit = z.value("fit", std::string("linear"));
        if (fit == "linear") {
            s.zne.fit = ExtrapolationFit::kLinear;
        } else if (fit == "richardson") {
            s.zne.fit = ExtrapolationFit::kRichardson;
        } else if (fit == "exponential") {
            s.zne.fit = ExtrapolationFit::kExponential;
        } else {
            throw std::invalid_argument("Unknown ZNE fit '" + fit + "'.");
        }
    }
    if (j.contains("vd")) {
        s.vd_copies = j.at("vd").value("copies", s.vd_copies);
    }
    if (j.contains("vncdr")) {
        s.vncdr_levels = j.at("vncdr").value("levels", s.vncdr_levels);
    }
    if (j.contains("united")) {
        s.united_levels = j.at("united").value("levels", s.united_levels);
        s.united_max_copies = j.at("united").value("max_copies", s.united_max_copies);
    }
    if (j.contains("cgvd")) {
        s.cgvd_max_copies = j.at("cgvd").value("max_copies", s.cgvd_max_copies);
        s.cgvd_intercept = j.at("cgvd").value("intercept", s.cgvd_intercept);
    }
    if (j.contains("training")) {
        const auto &t = j.at("training");
        s.training.candidates = t.value("candidates", s.training.candidates);
        s.training.select = t.value("select", s.training.select);
        s.training.keep_non_clifford = t.value("keep_non_clifford", s.training.keep_non_clifford);
    }
    if (j.contains("regression")) {
        s.ridge = j.at("regression").value("ridge", s.ridge);
    }
    c.validate();
    return c;
}

ErrorSummary summarize_errors(std::span<const double> abs_errors) {
    if (abs_errors.empty()) {
        throw std::invalid_argument("Cannot aggregate an empty set of rows.");
    }
    ErrorSummary s;
    s.count = abs_errors.size();
    double sum = 0.0;
    for (double e : abs_errors) {
        sum += e;
        s.max_abs_error = std::max(s.max_abs_error, e);
    }
    s.mean_abs_error = sum / static_cast<double>(s.count);
    if (s.count > 1) {
        double ss = 0.0;
        for (double e : abs_errors) {
            ss += (e - s.mean_abs_error) * (e - s.mean_abs_error);
        }
        double var = ss / static_cast<double>(s.count - 1);
        s.std_error = std::sqrt(var / static_cast<double>(s.count));
    }
    return s;
}

std::vector<MethodAggregate> aggregate(std::span<const ReportRow> rows) {
    if (rows.empty()) {
        throw std::invalid_argument("Cannot aggregate an empty set of rows.");
    }
    using Key = std::tuple<int, int, int64_t, int, int>;
    std::map<Key, std::pair<std::vector<double>, size_t>> groups;
    for (const ReportRow &r : rows) {
        auto &g = groups[Key{r.qubits, r.depth_factor, r.budget, static_cast<int>(r.method), r.copies}];
        if (r.skipped) {
            g.second++;
        } else {
            g.first.push_back(r.abs_error);
        }
    }
    std::vector<MethodAggregate> out;
    for (const auto &[key, group] : groups) {
        MethodAggregate a;
        a.qubits = std::get<0>(key);
        a.depth_factor = std::get<1>(key);
        a.budget = std::get<2>(key);
        a.method = static_cast<Method>(std::get<3>(key));
        a.copies = std::get<4>(key);
        a.skipped = group.second;
        if (!group.first.empty()) {
            a.errors = summarize_errors(group.first);
        }
        out.push_back(a);
    }
    return out;
}

const MethodAggregate *MitigationReport::find(
    int qubits, int depth_factor, int64_t budget, Method method, int copies) const {
    for (const MethodAggregate &a : aggregates) {
        if (a.qubits == qubits && a.depth_factor == depth_factor && a.budget == budget && a.method == method &&
            a.copies == copies) {
            return &a;
        }
    }
    return nullptr;
}

MitigationReport run_experiment(const ExperimentConfig &config) {
    config.validate();
    bool need_training = std::any_of(config.methods.begin(), config.methods.end(), is_regression);
    std::vector<Task> tasks = all_tasks(config);
    std::vector<Circuit> circuits(tasks.size());

    auto results = run_tasks(tasks, config.threads, [&](const Task &t) {
        InstanceContext ctx = prepare_instance(config, t.qubits, t.depth_factor, t.instance, need_training);
        std::vector<ReportRow> rows;
        for (int64_t budget : config.budgets) {
            for (Method m : config.methods) {
                ReportRow row = base_row(ctx, budget, m);
                uint64_t seed = derive_seed(ctx.seed, {static_cast<uint64_t>(budget), static_cast<uint64_t>(m)});
                try {
                    MethodOutcome o = evaluate_method(m, ctx, config, budget, seed);
                    row.estimate = o.estimate;
                    row.abs_error = std::abs(o.estimate - ctx.exact);
                    row.shots_used = o.shots_used;
                    row.model = std::move(o.model);
                } catch (const BudgetTooSmall &e) {
                    row.skipped = true;
                    row.note = e.what();
                } catch (const InsufficientShots &e) {
                    row.skipped = true;
                    row.note = e.what();
                } catch (const DegenerateTrainingSet &e) {
                    row.skipped = true;
                    row.note = e.what();
                }
                rows.push_back(std::move(row));
            }
        }
        return rows;
    });

    MitigationReport report;
    report.config = config;
    for (size_t k = 0; k < tasks.size(); k++) {
        const Task &t = tasks[k];
        uint64_t seed = derive_seed(
            config.seed,
            {static_cast<uint64_t>(t.qubits), static_cast<uint64_t>(t.depth_factor), static_cast<uint64_t>(t.instance)});
        report.circuits.push_back(build_random_circuit(t.qubits, t.depth_factor * t.qubits, seed));
        for (ReportRow &r : results[k]) {
            report.rows.push_back(std::move(r));
        }
    }
    report.aggregates = aggregate(report.rows);
    return report;
}

MitigationReport copy_sweep(const ExperimentConfig &config, int min_copies, int max_copies) {
    config.validate();
    if (min_copies < 1 || max_copies > 6 || min_copies > max_copies) {
        throw std::invalid_argument("Copy sweep range must lie within 1..6.");
    }
    std::vector<Task> tasks = all_tasks(config);
    auto results = run_tasks(tasks, config.threads, [&](const Task &t) {
        InstanceContext ctx;
        ctx.qubits = t.qubits;
        ctx.depth_factor = t.depth_factor;
        ctx.instance = t.instance;
        ctx.seed = derive_seed(
            config.seed,
            {static_cast<uint64_t>(t.qubits), static_cast<uint64_t>(t.depth_factor), static_cast<uint64_t>(t.instance)});
        ctx.circuit = build_random_circuit(t.qubits, t.depth_factor * t.qubits, ctx.seed);
        ctx.obs = PauliObservable::parse(config.observable, t.qubits);
        ctx.exact = simulate_exact(ctx.circuit, ctx.obs);
        std::vector<int> one{1};
        ctx.features =
            evaluate_exact_features(ctx.circuit, config.noise, ctx.obs, one, max_copies, derive_seed(ctx.seed, {kScaleKey}));

        std::vector<ReportRow> rows;
        for (int64_t budget : config.budgets) {
            for (int m = min_copies; m <= max_copies; m++) {
                Method method = m == 1 ? Method::kNoisy : Method::kVd;
                ReportRow row = base_row(ctx, budget, method);
                row.copies = m;
                uint64_t seed = derive_seed(ctx.seed, {static_cast<uint64_t>(budget), 0xC0B1, static_cast<uint64_t>(m)});
                try {
                    ShotBudget b = allocate_budget(method, budget, 1, 1, m);
                    FeatureLabel label{1, m};
                    auto shots = shots_for(config, b);
                    row.estimate = mitigate_vd(sample_features(ctx.features, std::span(&label, 1), shots, seed)[0]);
                    row.abs_error = std::abs(row.estimate - ctx.exact);
                    row.shots_used = b.used();
                } catch (const BudgetTooSmall &e) {
                    row.skipped = true;
                    row.note = e.what();
                } catch (const InsufficientShots &e) {
                    row.skipped = true;
                    row.note = e.what();
                }
                rows.push_back(std::move(row));
            }
        }
        return rows;
    });
    MitigationReport report;
    report.config = config;
    for (auto &rs : results) {
        for (ReportRow &r : rs) {
            report.rows.push_back(std::move(r));
        }
    }
    report.aggregates = aggregate(report.rows);
    return report;
}

double OracleCheckResult::max_error(Method method) const {
    for (const auto &[m, e] : max_errors) {
        if (m == method) {
            return e;
        }
    }
    throw std::invalid_argument("Method was not part of the oracle check.");
}

OracleCheckResult run_oracle_check(uint64_t seed, int circuits, double global_p) {
    ExperimentConfig config;
    config.noise = NoiseModel::global_depolarizing(global_p);
    config.infinite_shots = true;
    config.instances = 1;
    config.budgets = {1'000'000'000};
    config.methods = {Method::kCdr, Method::kVncdr, Method::kCgvd, Method::kUnited};
    config.seed = seed;
    config.threads = 1;

    OracleCheckResult result;
    result.circuits = circuits;
    result.global_p = global_p;
    for (Method m : config.methods) {
        result.max_errors.emplace_back(m, 0.0);
    }
    int instance = 0;
    for (int k = 0; k < circuits; k++) {
        // L = 2Q so that even Q = 2 has more RZ gates than the kept count and the
        // near-Clifford candidates differ from one another.
        int q = 2 + k % 3;
        InstanceContext ctx = prepare_instance(config, q, 2, instance++, true);
        // A circuit whose Clifford skeleton forces every training value to zero cannot be
        // trained on at all; draw a fresh one.
        while (!ctx.pool) {
            result.rejected++;
            if (result.rejected > 100 * circuits) {
                throw DegenerateTrainingSet(ctx.pool_error);
            }
            ctx = prepare_instance(config, q, 2, instance++, true);
        }
        for (auto &[m, worst] : result.max_errors) {
            MethodOutcome o = evaluate_method(m, ctx, config, config.budgets[0], derive_seed(ctx.seed, {1}));
            worst = std::max(worst, std::abs(o.estimate - ctx.exact));
        }
    }
    return result;
}

void write_results_csv(std::ostream &out, const MitigationReport &report, bool with_copies) {
    out << "Q,g,L,budget,instance_seed,method," << (with_copies ? "copies," : "")
        << "exact,estimate,abs_error,shots_used\n";
    for (const ReportRow &r : report.rows) {
        if (r.skipped) {
            continue;
        }
        out << r.qubits << ',' << r.depth_factor << ',' << r.layers << ',' << r.budget << ',' << r.instance_seed
            << ',' << method_name(r.method) << ',';
        if (with_copies) {
            out << r.copies << ',';
        }
        out << fmt_double(r.exact) << ',' << fmt_double(r.estimate) << ',' << fmt_double(r.abs_error) << ','
            << r.shots_used << '\n';
    }
}

std::vector<ReportRow> read_results_csv(std::istream &in) {
    std::string line;
    if (!std::getline(in, line)) {
        throw std::invalid_argument("results.csv is empty.");
    }
    bool with_copies = line.find("copies") != std::string::npos;
    std::vector<ReportRow> rows;
    while (std::getline(in, line)) {
        if (line.empty()) {
            continue;
        }
        std::vector<std::string> f;
        std::stringstream ss(line);
        std::string cell;
        while (std::getline(ss, cell, ',')) {
            f.push_back(cell);
        }
        size_t need = with_copies ? 11 : 10;
        if (f.size() != need) {
            throw std::invalid_argument("Malformed results.csv row: " + line);
        }
        ReportRow r;
        size_t k = 0;
        r.qubits = std::stoi(f[k++]);
        r.depth_factor = std::stoi(f[k++]);
        r.layers = std::stoi(f[k++]);
        r.budget = std::stoll(f[k++]);
        r.instance_seed = std::stoull(f[k++]);
        r.method = parse_method(f[k++]);
        if (with_copies) {
            r.copies = std::stoi(f[k++]);
        }
        r.exact = std::stod(f[k++]);
        r.estimate = std::stod(f[k++]);
        r.abs_error = std::stod(f[k++]);
        r.shots_used = std::stoll(f[k++]);
        rows.push_back(r);
    }
    return rows;
}

void write_curves_csv(std::ostream &out, const MitigationReport &report) {
    out << "Q,g,budget,method,copies,mean_abs_error,max_abs_error,std_error,count,skipped\n";
    for (const MethodAggregate &a : report.aggregates) {
        out << a.qubits << ',' << a.depth_factor << ',' << a.budget << ',' << method_name(a.method) << ','
            << a.copies << ',' << fmt_double(a.errors.mean_abs_error) << ',' << fmt_double(a.errors.max_abs_error)
            << ',' << fmt_double(a.errors.std_error) << ',' << a.errors.count << ',' << a.skipped << '\n';
    }
}

nlohmann::json summary_json(const MitigationReport &report) {
    nlohmann::json aggs = nlohmann::json::array();
    for (const MethodAggregate &a : report.aggregates) {
        aggs.push_back(aggregate_to_json(a));
    }
    return {{"config", config_to_json(report.config)}, {"aggregates", aggs}};
}

nlohmann::json report_to_json(const MitigationReport &report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const ReportRow &r : report.rows) {
        rows.push_back(row_to_json(r));
    }
    nlohmann::json j = summary_json(report);
    j["rows"] = rows;
    return j;
}

MitigationReport report_from_json(const nlohmann::json &j) {
    MitigationReport report;
    report.config = config_from_json(j.at("config"));
    for (const auto &r : j.at("rows")) {
        report.rows.push_back(row_from_json(r));
    }
    if (!report.rows.empty()) {
        report.aggregates = aggregate(report.rows);
    }
    return report;
}

void write_report_dir(const std::string &dir, const MitigationReport &report, bool with_copies) {
    namespace fs = std::filesystem;
    fs::create_directories(dir);
    auto open = [&](const char *name) {
        std::ofstream f(fs::path(dir) / name);
        if (!f) {
            throw std::runtime_error("Cannot write " + (fs::path(dir) / name).string() + ".");
        }
        return f;
    };
    {
        auto f = open("results.csv");
        write_results_csv(f, report, with_copies);
    }
    {
        auto f = open("curves.csv");
        write_curves_csv(f, report);
    }
    {
        auto f = open("summary.json");
        f << summary_json(report).dump(2) << '\n';
    }
    {
        auto f = open("report.json");
        f << report_to_json(report).dump() << '\n';
    }
    if (!report.circuits.empty()) {
        nlohmann::json cs = nlohmann::json::array();
        for (const Circuit &c : report.circuits) {
            cs.push_back(circuit_to_json(c));
        }
        auto f = open("circuits.json");
        f << cs.dump() << '\n';
    }
    nlohmann::json models = nlohmann::json::array();
    for (const ReportRow &r : report.rows) {
        if (r.model) {
            models.push_back({{"instance_seed", r.instance_seed},
                              {"budget", r.budget},
                              {"method", std::string(method_name(r.method))},
                              {"model", model_to_json(*r.model)}});
        }
    }
    if (!models.empty()) {
        auto f = open("models.json");
        f << models.dump() << '\n';
    }
}

}  // namespace qem
