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

#ifndef QEMKIT_TEST_UTIL_H
#define QEMKIT_TEST_UTIL_H

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "qemkit/density_matrix.h"
#include "qemkit/rng.h"

namespace qem_test {

using qem::Complex;
using qem::RowMatrix;

inline Eigen::MatrixXcd pauli_matrix(char label) {
    Eigen::MatrixXcd m(2, 2);
    const Complex i(0.0, 1.0);
    switch (label) {
        case 'X':
            m << 0, 1, 1, 0;
            break;
        case 'Y':
            m << 0, -i, i, 0;
            break;
        case 'Z':
            m << 1, 0, 0, -1;
            break;
        default:
            m << 1, 0, 0, 1;
    }
    return m;
}

/// Full 2^Q operator for `u` acting on `qubits` (u's local bit k is qubits[k]). Built entry by
/// entry so it shares no code with the contraction in the library.
inline Eigen::MatrixXcd embed(const Eigen::MatrixXcd &u, const std::vector<int> &qubits, int num_qubits) {
    const int64_t dim = int64_t{1} << num_qubits;
    int64_t mask = 0;
    for (int q : qubits) {
        mask |= int64_t{1} << q;
    }
    auto local = [&](int64_t idx) {
        int64_t s = 0;
        for (size_t k = 0; k < qubits.size(); k++) {
            s |= ((idx >> qubits[k]) & 1) << k;
        }
        return s;
    };
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(dim, dim);
    for (int64_t r = 0; r < dim; r++) {
        for (int64_t c = 0; c < dim; c++) {
            if ((r & ~mask) == (c & ~mask)) {
                full(r, c) = u(local(r), local(c));
            }
        }
    }
    return full;
}

/// Pauli string operator as a dense matrix; label[k] acts on qubit k.
inline Eigen::MatrixXcd pauli_string(const std::string &labels) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Identity(int64_t{1} << labels.size(), int64_t{1} << labels.size());
    for (size_t k = 0; k < labels.size(); k++) {
        out = embed(pauli_matrix(labels[k]), {static_cast<int>(k)}, static_cast<int>(labels.size())) * out;
    }
    return out;
}

/// Sum_k K_k rho K_k^dagger.
inline Eigen::MatrixXcd kraus(const Eigen::MatrixXcd &rho, const std::vector<Eigen::MatrixXcd> &ops) {
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(rho.rows(), rho.cols());
    for (const auto &k : ops) {
        out += k * rho * k.adjoint();
    }
    return out;
}

inline std::vector<Eigen::MatrixXcd> depolarizing_kraus(double p, int qubit, int num_qubits) {
    std::vector<Eigen::MatrixXcd> ops;
    ops.push_back(std::sqrt(1.0 - p) * embed(pauli_matrix('I'), {qubit}, num_qubits));
    for (char c : {'X', 'Y', 'Z'}) {
        ops.push_back(std::sqrt(p / 3.0) * embed(pauli_matrix(c), {qubit}, num_qubits));
    }
    return ops;
}

inline std::vector<Eigen::MatrixXcd> dephasing_kraus(double p, int qubit, int num_qubits) {
    return {
        std::sqrt(1.0 - p) * embed(pauli_matrix('I'), {qubit}, num_qubits),
        std::sqrt(p) * embed(pauli_matrix('Z'), {qubit}, num_qubits),
    };
}

inline Eigen::VectorXcd random_state(int num_qubits, qem::Rng &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    Eigen::VectorXcd v(int64_t{1} << num_qubits);
    for (auto &x : v) {
        x = Complex(n(rng), n(rng));
    }
    return v.normalized();
}

/// Random full-rank mixed state G G^dagger / Tr.
inline RowMatrix random_density(int num_qubits, qem::Rng &rng) {
    std::normal_distribution<double> n(0.0, 1.0);
    const int64_t dim = int64_t{1} << num_qubits;
    Eigen::MatrixXcd g(dim, dim);
    for (int64_t r = 0; r < dim; r++) {
        for (int64_t c = 0; c < dim; c++) {
            g(r, c) = Complex(n(rng), n(rng));
        }
    }
    Eigen::MatrixXcd rho = g * g.adjoint();
    rho /= rho.trace();
    return rho;
}

inline double max_abs_diff(const Eigen::MatrixXcd &a, const Eigen::MatrixXcd &b) {
    return (a - b).cwiseAbs().maxCoeff();
}

}  // namespace qem_test

#endif
