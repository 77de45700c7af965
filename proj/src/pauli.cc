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

#include "qemkit/pauli.h"

#include <bit>
#include <complex>
#include <stdexcept>

namespace qem {

namespace {

bool valid_label(char c) {
    return c == 'I' || c == 'X' || c == 'Y' || c == 'Z';
}

}  // namespace

PauliObservable::PauliObservable(std::string_view labels) : labels_(labels) {
    if (labels_.empty()) {
        throw std::invalid_argument("Pauli observable needs at least one qubit.");
    }
    for (char c : labels_) {
        if (!valid_label(c)) {
            throw std::invalid_argument("Invalid Pauli label '" + std::string(1, c) + "'.");
        }
    }
}

PauliObservable PauliObservable::single(int num_qubits, int qubit, char label) {
    if (qubit < 0 || qubit >= num_qubits) {
        throw std::invalid_argument("Pauli target qubit out of range.");
    }
    std::string s(static_cast<size_t>(num_qubits), 'I');
    s[static_cast<size_t>(qubit)] = label;
    return PauliObservable(s);
}

PauliObservable PauliObservable::parse(std::string_view text, int num_qubits) {
    bool dense = static_cast<int>(text.size()) == num_qubits;
    for (char c : text) {
        dense &= valid_label(c);
    }
    if (dense) {
        return PauliObservable(text);
    }
    std::string s(static_cast<size_t>(num_qubits), 'I');
    size_t k = 0;
    while (k < text.size()) {
        if (text[k] == ' ' || text[k] == ',') {
            k++;
            continue;
        }
        char label = text[k++];
        if (!valid_label(label)) {
            throw std::invalid_argument("Cannot parse observable '" + std::string(text) + "'.");
        }
        size_t start = k;
        while (k < text.size() && text[k] >= '0' && text[k] <= '9') {
            k++;
        }
        if (start == k) {
            throw std::invalid_argument("Missing qubit index in observable '" + std::string(text) + "'.");
        }
        int q = std::stoi(std::string(text.substr(start, k - start)));
        if (q >= num_qubits) {
            throw std::invalid_argument("Observable qubit index out of range.");
        }
        s[static_cast<size_t>(q)] = label;
    }
    return PauliObservable(s);
}

bool PauliObservable::is_identity() const {
    for (char c : labels_) {
        if (c != 'I') {
            return false;
        }
    }
    return true;
}

uint64_t PauliObservable::x_mask() const {
    uint64_t m = 0;
    for (size_t q = 0; q < labels_.size(); q++) {
        if (labels_[q] == 'X' || labels_[q] == 'Y') {
            m |= uint64_t{1} << q;
        }
    }
    return m;
}

uint64_t PauliObservable::z_mask() const {
    uint64_t m = 0;
    for (size_t q = 0; q < labels_.size(); q++) {
        if (labels_[q] == 'Z' || labels_[q] == 'Y') {
            m |= uint64_t{1} << q;
        }
    }
    return m;
}

int PauliObservable::y_count() const {
    int n = 0;
    for (char c : labels_) {
        n += c == 'Y';
    }
    return n;
}

Eigen::MatrixXcd PauliObservable::dense() const {
    const Eigen::Index dim = Eigen::Index{1} << num_qubits();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(dim, dim);
    for (Eigen::Index c = 0; c < dim; c++) {
        Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
        e(c) = 1.0;
        m.col(c) = apply(e);
    }
    return m;
}

Eigen::VectorXcd PauliObservable::apply(const Eigen::VectorXcd &psi) const {
    const uint64_t xm = x_mask();
    const uint64_t zm = z_mask();
    // P|c> = i^{#Y} (-1)^{popcount(c & zmask)} |c ^ xmask>.
    std::complex<double> global{1.0, 0.0};
    for (int k = 0; k < y_count() % 4; k++) {
        global *= std::complex<double>{0.0, 1.0};
    }
    Eigen::VectorXcd out(psi.size());
    for (Eigen::Index c = 0; c < psi.size(); c++) {
        uint64_t uc = static_cast<uint64_t>(c);
        double sign = (std::popcount(uc & zm) & 1) ? -1.0 : 1.0;
        out(static_cast<Eigen::Index>(uc ^ xm)) = global * sign * psi(c);
    }
    return out;
}

}  // namespace qem
