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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "qemkit/bench.h"
#include "qemkit/simulate.h"

using namespace qem;

namespace {

struct Outcome {
    bool pass;
    std::string detail;
};

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

Outcome oracle_suite() {
    auto start = std::chrono::steady_clock::now();
    OracleCheckResult r = run_oracle_check(2022, 10, 0.01);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = secs < 60.0;
    std::string detail;
    for (const auto &[m, e] : r.max_errors) {
        pass = pass && e < 1e-8;
        detail += std::string(method_name(m)) + "=" + fmt(e) + " ";
    }
    detail += "runtime=" + fmt(secs) + "s redrawn=" + std::to_string(r.rejected);
    return {pass, detail};
}

Outcome closed_form_f() {
    Rng rng(2022);
    std::normal_distribution<double> n(0.0, 1.0);
    double worst = 0.0;
    int cases = 0;
    for (int q : {1, 2, 3}) {
        const int d = 1 << q;
        Eigen::VectorXcd psi(d);
        for (auto &x : psi) {
            x = Complex(n(rng), n(rng));
        }
        psi.normalize();
        DensityMatrix pure = DensityMatrix::from_pure_state(psi);
        std::string label(static_cast<size_t>(q), 'I');
        label[0] = 'Z';
        if (q > 1) {
            label[static_cast<size_t>(q - 1)] = 'X';
        }
        PauliObservable obs(label);
        double exact = expectation(pure, obs);
        for (double p : {0.1, 0.3, 0.5}) {
            for (int j = 1; j <= 3; j++) {
                DensityMatrix rho = apply_global_depolarizing(pure, std::pow(p, j));
                std::vector<VdExpectation> vd = vd_expectations(rho, obs, 6);
                for (int m = 1; m <= 6; m++) {
                    double expected = global_depolarizing_f(m, j, p, d) * exact;
                    worst = std::max(worst, std::abs(vd[static_cast<size_t>(m - 1)].ratio - expected));
                    cases++;
                }
            }
        }
    }
    return {worst < 1e-10, std::to_string(cases) + " cases, max deviation " + fmt(worst)};
}

Outcome richardson_exactness() {
    double worst = 0.0;
    for (std::vector<double> levels : {std::vector<double>{1, 2}, {1, 2, 3}, {1, 2, 3, 4}}) {
        const size_t n = levels.size() - 1;
        for (int trial = 0; trial < 5; trial++) {
            std::vector<double> coeff;
            for (size_t k = 0; k <= n; k++) {
                coeff.push_back(std::sin(1.0 + static_cast<double>(trial * 7 + k)));
            }
            std::vector<double> values;
            for (double c : levels) {
                double v = 0.0;
                for (size_t k = 0; k <= n; k++) {
                    v += coeff[k] * std::pow(c, static_cast<double>(k));
                }
                values.push_back(v);
            }
            double est = zne(values, ExtrapolationSpec{levels, ExtrapolationFit::kRichardson});
            worst = std::max(worst, std::abs(est - coeff[0]));
        }
    }
    std::vector<double> g2 = richardson_coefficients(std::vector<double>{1, 2});
    std::vector<double> g3 = richardson_coefficients(std::vector<double>{1, 2, 3});
    double coeff_err = std::max({std::abs(g2[0] - 2), std::abs(g2[1] + 1), std::abs(g3[0] - 3), std::abs(g3[1] + 3),
                                 std::abs(g3[2] - 1)});
    return {worst < 1e-9 && coeff_err < 1e-12,
            "max extrapolation error " + fmt(worst) + ", coefficient error " + fmt(coeff_err)};
}

Outcome budget_formulas() {
    int checked = 0;
    bool pass = true;
    for (int levels = 1; levels <= 5; levels++) {
        for (int nt : {1, 10, 50, 100}) {
            for (int m = 1; m <= 5; m++) {
                int64_t nl = levels;
                int64_t t = nt + 1;
                pass = pass && circuit_count(Method::kVd, levels, nt, m) == 2;
                pass = pass && circuit_count(Method::kZne, levels, nt, m) == nl;
                pass = pass && circuit_count(Method::kVncdr, levels, nt, m) == nl * t;
                pass = pass && circuit_count(Method::kUnited, levels, nt, m) == nl * t * (2 * m - 1);
                ShotBudget b = allocate_budget(Method::kUnited, 10'000'000'000, levels, nt, m);
                pass = pass && b.per_circuit == 10'000'000'000 / (nl * t * (2 * m - 1)) && b.used() <= b.total;
                checked++;
            }
        }
    }
    int64_t united = allocate_budget(Method::kUnited, 1'000'000, 3, 50, 3).circuit_count;
    pass = pass && united == 765;
    return {pass, std::to_string(checked) + " parameter combinations, UNITED(3, 50, 3) = " + std::to_string(united)};
}

Outcome estimator_statistics() {
    const int reps = 10'000;
    const int64_t shots = 1000;
    Rng rng(derive_seed(2022, {5}));
    bool pass = true;
    std::string detail;
    for (double mu : {-0.9, 0.0, 0.5}) {
        double sum = 0.0;
        double sq = 0.0;
        for (int k = 0; k < reps; k++) {
            double v = sample_expectation(mu, shots, rng);
            sum += v;
            sq += v * v;
        }
        double mean = sum / reps;
        double var = (sq - reps * mean * mean) / (reps - 1);
        double expected_var = (1 - mu * mu) / static_cast<double>(shots);
        double sigma = std::sqrt(expected_var / reps);
        bool ok = std::abs(mean - mu) < 4 * sigma && std::abs(var / expected_var - 1) < 0.1;
        pass = pass && ok;
        detail += "mu=" + fmt(mu) + ": bias/sigma=" + fmt((mean - mu) / sigma) + " var ratio=" +
                  fmt(var / expected_var) + "; ";
    }
    return {pass, detail};
}

Outcome scaling_invariance() {
    double worst = 0.0;
    bool counts = true;
    for (uint64_t k = 0; k < 30; k++) {
        Circuit c = build_random_circuit(4, 4, derive_seed(2022, {6, k}));
        PauliObservable obs("ZIII");
        double exact = simulate_exact(c, obs);
        for (int level : {2, 3}) {
            Circuit s = scale_circuit(c, level, derive_seed(2022, {7, k, static_cast<uint64_t>(level)}));
            worst = std::max(worst, std::abs(simulate_exact(s, obs) - exact));
            for (GateKind kind : {GateKind::RZ, GateKind::RY, GateKind::XX}) {
                counts = counts && s.count(kind) == static_cast<size_t>(level) * c.count(kind);
            }
        }
    }
    return {worst < 1e-10 && counts,
            "max deviation " + fmt(worst) + (counts ? ", gate counts exact" : ", gate counts WRONG")};
}

struct Criterion7 {
    Outcome a;
    Outcome b;
    Outcome c;
    std::string info;
};

Criterion7 desk_scale_reproduction() {
    ExperimentConfig config;
    config.qubits = {4};
    config.depth_factors = {1};
    config.instances = 30;
    auto start = std::chrono::steady_clock::now();
    MitigationReport r = run_experiment(config);
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const int64_t top = 10'000'000'000;
    auto mean = [&](int64_t budget, Method m) { return r.find(4, 1, budget, m)->errors.mean_abs_error; };

    Criterion7 out;
    double noisy = mean(top, Method::kNoisy);
    double united = mean(top, Method::kUnited);
    double vncdr = mean(top, Method::kVncdr);
    bool a = united <= vncdr && vncdr < noisy && noisy / united >= 2 && noisy / vncdr >= 2;
    out.a = {a, "noisy=" + fmt(noisy) + " vncdr=" + fmt(vncdr) + " united=" + fmt(united) +
                    " improvement vncdr=" + fmt(noisy / vncdr) + "x united=" + fmt(noisy / united) + "x"};

    bool b = true;
    std::string worst_step;
    double worst_excess = -1e9;
    for (Method m : config.methods) {
        for (size_t k = 0; k + 1 < config.budgets.size(); k++) {
            const MethodAggregate *lo = r.find(4, 1, config.budgets[k], m);
            const MethodAggregate *hi = r.find(4, 1, config.budgets[k + 1], m);
            if (lo->errors.count == 0 || hi->errors.count == 0) {
                continue;
            }
            double tol = 2 * std::max(lo->errors.std_error, hi->errors.std_error);
            double excess = hi->errors.mean_abs_error - lo->errors.mean_abs_error - tol;
            if (excess > worst_excess) {
                worst_excess = excess;
                worst_step = std::string(method_name(m)) + " " + std::to_string(config.budgets[k]) + "->" +
                             std::to_string(config.budgets[k + 1]);
            }
            b = b && excess <= 0;
        }
    }
    out.b = {b, "largest increase beyond 2 SE: " + fmt(worst_excess) + " at " + worst_step};

    double zne_lo = mean(100'000, Method::kZne);
    double zne_hi = mean(top, Method::kZne);
    out.c = {zne_lo <= 2 * zne_hi, "zne 1e5=" + fmt(zne_lo) + " 1e10=" + fmt(zne_hi) + " ratio=" + fmt(zne_lo / zne_hi)};

    size_t skipped = 0;
    for (const MethodAggregate &g : r.aggregates) {
        skipped += g.skipped;
    }
    double vd = mean(top, Method::kVd);
    bool full_order = united <= vncdr && vncdr <= std::min(zne_hi, vd);
    out.info = "runtime=" + fmt(secs) + "s skipped rows=" + std::to_string(skipped) + " zne(1e10)=" + fmt(zne_hi) +
               " vd(1e10)=" + fmt(vd) + " united<=vncdr<=min(zne,vd): " + (full_order ? "yes" : "no");
    return out;
}

Outcome plateau() {
    ExperimentConfig config;
    config.qubits = {4};
    config.depth_factors = {1};
    config.instances = 30;
    config.budgets = {10'000'000'000};
    MitigationReport r = copy_sweep(config, 1, 6);
    bool pass = true;
    std::string detail;
    double worst = 0.0;
    for (int a = 2; a <= 5; a++) {
        const MethodAggregate *ga = r.find(4, 1, config.budgets[0], Method::kVd, a);
        detail += "M=" + std::to_string(a) + ":" + fmt(ga->errors.mean_abs_error) + " ";
        for (int b = a + 1; b <= 5; b++) {
            const MethodAggregate *gb = r.find(4, 1, config.budgets[0], Method::kVd, b);
            double tol = 2 * std::max(ga->errors.std_error, gb->errors.std_error);
            double gap = std::abs(ga->errors.mean_abs_error - gb->errors.mean_abs_error);
            worst = std::max(worst, gap / tol);
            pass = pass && gap <= tol;
        }
    }
    detail += "largest gap = " + fmt(worst) + " x (2 SE)";
    return {pass, detail};
}

Outcome subset_consistency() {
    PauliObservable obs("ZIII");
    NoiseModel noise;
    TrainingOptions opts;
    std::vector<int> three{1, 2, 3};
    std::vector<int> one{1};
    const uint64_t seed = derive_seed(2022, {10});
    const int64_t shots = 1'000'000;
    // First circuit whose near-Clifford candidates are not all zero-valued.
    Circuit c;
    TrainingSet united;
    for (uint64_t k = 0;; k++) {
        c = build_random_circuit(4, 4, derive_seed(2022, {9, k}));
        try {
            united = build_training_set(c, obs, noise, opts, three, 3, shots, seed);
            break;
        } catch (const DegenerateTrainingSet &) {
        }
    }
    TrainingSet vncdr = build_training_set(c, obs, noise, opts, three, 1, shots, seed);
    TrainingSet cgvd = build_training_set(c, obs, noise, opts, one, 3, shots, seed);

    ExactFeatures coi = evaluate_exact_features(c, noise, obs, three, 3, seed);
    std::vector<FeatureLabel> m1 = feature_schema(three, 1);
    std::vector<FeatureLabel> c1 = feature_schema(one, 3);
    std::vector<double> xm = sample_features(coi, m1, shots, seed);
    std::vector<double> xc = sample_features(coi, c1, shots, seed);

    double dm = std::abs(mitigate_united(fit_regression(project_schema(united, m1), false), xm) -
                         mitigate_vncdr(fit_regression(vncdr, false), xm));
    double dc = std::abs(mitigate_united(fit_regression(project_schema(united, c1), false), xc) -
                         mitigate_united(fit_regression(cgvd, false), xc));
    return {dm <= 1e-12 && dc <= 1e-12, "|united(m=1) - vncdr|=" + fmt(dm) + " |united(c=1) - cgvd|=" + fmt(dc)};
}

}  // namespace

int main() {
    bool all = true;
    auto guarded = [](const std::function<Outcome()> &fn) -> Outcome {
        try {
            return fn();
        } catch (const std::exception &e) {
            return {false, std::string("threw: ") + e.what()};
        }
    };
    auto report = [&](const std::string &name, const Outcome &o) {
        all = all && o.pass;
        std::printf("[%s] criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name.c_str(), o.detail.c_str());
        std::fflush(stdout);
    };
    report("1 (global depolarizing oracle suite)", guarded(oracle_suite));
    report("2 (f_mj closed form vs simulation)", guarded(closed_form_f));
    report("3 (Richardson exactness)", guarded(richardson_exactness));
    report("4 (shot budget formulas)", guarded(budget_formulas));
    report("5 (estimator statistics)", guarded(estimator_statistics));
    report("6 (noise scaling invariance)", guarded(scaling_invariance));
    Criterion7 c7;
    try {
        c7 = desk_scale_reproduction();
    } catch (const std::exception &e) {
        Outcome failed{false, std::string("threw: ") + e.what()};
        c7 = {failed, failed, failed, "not run"};
    }
    report("7a (ordering at 1e10 shots)", c7.a);
    report("7b (error non-increasing in budget)", c7.b);
    report("7c (ZNE converges fast)", c7.c);
    std::printf("[INFO] criterion 7: %s\n", c7.info.c_str());
    report("8 (copy-number plateau)", guarded(plateau));
    report("9 (subset consistency)", guarded(subset_consistency));
    std::printf("%s\n", all ? "ALL ACCEPTANCE CRITERIA PASS" : "SOME ACCEPTANCE CRITERIA FAIL");
    return all ? 0 : 1;
}
