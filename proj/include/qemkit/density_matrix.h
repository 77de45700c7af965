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

#ifndef QEMKIT_DENSITY_MATRIX_H
#define QEMKIT_DENSITY_MATRIX_H

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "qemkit/gate.h"
#include "qemkit/pauli.h"

namespace qem {

using Complex = std::complex<double>;
using RowMatrix = Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// Hard cap on register size for dense simulation.
inline constexpr int kMaxQubits = 12;

/// Dense density matrix over Q qubits, stored row-major.
/// Basis index bit k is the state of qubit k.
class DensityMatrix {
   public:
    /// The computational basis state |0...0><0...0|.
    explicit DensityMatrix(int num_qubits);

    /// Wraps an existing matrix. Validates shape, unit trace and Hermiticity.
    static DensityMatrix from_matrix(RowMatrix data);
    static DensityMatrix from_pure_state(const Eigen::VectorXcd &psi);
    static DensityMatrix maximally_mixed(int num_qubits);

    int num_qubits() const {
        return num_qubits_;
    }
    Eigen::Index dim() const {
        return data_.rows();
    }
    const RowMatrix &data() const {
        return data_;
    }
    Complex operator()(Eigen::Index row, Eigen::Index col) const {
        return data_(row, col);
    }
    double trace() const {
        return data_.trace().real();
    }

    /// rho -> U rho U^dagger where U acts on `qubits` (local index bit t is qubits[t]).
    void apply_unitary(const Eigen::MatrixXcd &u, std::span<const int> qubits);
    /// rho -> sum_k w_k U_k rho U_k^dagger. Weights must sum to one.
    void apply_unitary_mixture(
        std::span<const double> weights, std::span<const Eigen::MatrixXcd> unitaries, std::span<const int> qubits);
    void apply_gate(const Gate &gate);
    /// (1-p) rho + p/3 (X rho X + Y rho Y + Z rho Z) on one qubit.
    void apply_depolarizing(double p, int qubit);
    /// (1-p) rho + p I/d over the whole register.
    void apply_global_depolarizing(double p);
    /// (1-p) rho + p Z rho Z on one qubit.
    void apply_dephasing(double p, int qubit);

    /// Throws std::runtime_error when trace or Hermiticity drift beyond `tol`.
    void check_invariants(double tol = 1e-10) const;
    double min_eigenvalue() const;

   private:
    DensityMatrix(int num_qubits, RowMatrix data);
    void check_qubit(int qubit) const;

    int num_qubits_;
    RowMatrix data_;
};

DensityMatrix apply_gate(DensityMatrix state, const Gate &gate);
DensityMatrix apply_depolarizing(DensityMatrix state, double p, int qubit);
DensityMatrix apply_global_depolarizing(DensityMatrix state, double p);
DensityMatrix apply_dephasing(DensityMatrix state, double p, int qubit);

/// Tr(M P) for an arbitrary square matrix M and Pauli string P.
Complex pauli_trace(const RowMatrix &m, const PauliObservable &obs);

/// Tr(rho X). The imaginary residue must be below 1e-8.
double expectation(const DensityMatrix &state, const PauliObservable &obs);

struct VdExpectation {
    double numerator;    // Tr(rho^M X)
    double denominator;  // Tr(rho^M)
    double ratio;
};

/// Virtual-distillation estimator Tr(rho^M X) / Tr(rho^M).
VdExpectation vd_expectation(const DensityMatrix &state, const PauliObservable &obs, int copies);

/// All copy counts 1..max_copies at once. Entry m-1 holds M = m.
/// Reuses matrix powers, so M <= 4 costs a single matrix product.
std::vector<VdExpectation> vd_expectations(const DensityMatrix &state, const PauliObservable &obs, int max_copies);

struct SpectralDiagnostics {
    /// 1 - |<psi_exact|psi_0>|^2.
    double coherent_mismatch;
    /// <psi_0|X|psi_0> - <psi_exact|X|psi_exact>.
    double noise_floor;
    double dominant_eigenvalue;
    /// False when the top eigenvalue is degenerate within 1e-12.
    bool reliable;
    /// Whether |noise_floor| <= 2 c ||X||. This linear bound can fail for small c;
    /// |noise_floor| <= 2 sqrt(c) ||X|| always holds and is enforced.
    bool linear_bound_holds;
};

SpectralDiagnostics spectral_diagnostics(
    const DensityMatrix &state, const Eigen::VectorXcd &exact_state, const PauliObservable &obs);

}  // namespace qem

#endif
