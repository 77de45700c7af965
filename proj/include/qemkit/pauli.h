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

#ifndef QEMKIT_PAULI_H
#define QEMKIT_PAULI_H

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qem {

/// A Pauli string observable. Label k acts on qubit k; qubit k is bit k of a basis index.
class PauliObservable {
   public:
    PauliObservable() = default;
    /// Parses a dense label string such as "ZIXY" (character k acts on qubit k).
    explicit PauliObservable(std::string_view labels);

    /// Single-qubit Pauli `label` on `qubit`, identity elsewhere.
    static PauliObservable single(int num_qubits, int qubit, char label);

    /// Parses either the dense form ("ZIII") or the sparse form ("Z0", "X1 Z3")
    /// for a register of `num_qubits` qubits.
    static PauliObservable parse(std::string_view text, int num_qubits);

    int num_qubits() const {
        return static_cast<int>(labels_.size());
    }
    char label(int qubit) const {
        return labels_[qubit];
    }
    const std::string &labels() const {
        return labels_;
    }
    bool is_identity() const;

    /// Bits where the operator flips the basis state (X or Y).
    uint64_t x_mask() const;
    /// Bits carrying a sign (Y or Z).
    uint64_t z_mask() const;
    int y_count() const;

    /// Largest absolute eigenvalue. Every Pauli string has spectral norm 1.
    double spectral_norm() const {
        return 1.0;
    }
    /// Dense 2^Q x 2^Q matrix. Intended for tests and diagnostics.
    Eigen::MatrixXcd dense() const;
    /// Returns X|psi>.
    Eigen::VectorXcd apply(const Eigen::VectorXcd &psi) const;

    bool operator==(const PauliObservable &other) const = default;

   private:
    std::string labels_;
};

}  // namespace qem

#endif
