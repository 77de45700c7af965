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

#include "qemkit/density_matrix.h"

#include <bit>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qem {

namespace {

void check_probability(double p) {
    if (!(p >= 0.0 && p <= 1.0)) {
        throw std::invalid_argument("Channel probability " + std::to_string(p) + " is outside [0, 1].");
    }
}

int qubits_for_dim(Eigen::Index dim) {
    if (dim < 2 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("Density matrix dimension must be a power of two >= 2.");
    }
    return std::countr_zero(static_cast<uint64_t>(dim));
}

/// Offsets of the 2^k local basis states inside a full index, plus the mask of touched bits.
struct LocalIndexing {
    std::vector<Eigen::Index> offsets;
    uint64_t mask = 0;
};

LocalIndexing local_indexing(std::span<const int> qubits) {
    LocalIndexing li;
    size_t n = size_t{1} << qubits.size();
    li.offsets.resize(n);
    for (size_t s = 0; s < n; s++) {
        uint64_t off = 0;
        for (size_t t = 0; t < qubits.size(); t++) {
            if ((s >> t) & 1) {
                off |= uint64_t{1} << qubits[t];
            }
        }
        li.offsets[s] = static_cast<Eigen::Index>(off);
    }
    for (int q : qubits) {
        li.mask |= uint64_t{1} << q;
    }
    return li;
}

/// In place: m <- U m U^dagger, U local to the given qubits.
void conjugate_in_place(RowMatrix &m, const Eigen::MatrixXcd &u, const LocalIndexing &li) {
    const Eigen::Index dim = m.rows();
    const size_t n = li.offsets.size();
    std::vector<Complex> in(n);
    std::vector<Complex> out(n);
    Complex *data = m.data();

    // Left multiplication mixes whole rows.
    for (Eigen::Index b = 0; b < dim; b++) {
        if (static_cast<uint64_t>(b) & li.mask) {
            continue;
        }
        for (Eigen::Index c = 0; c < dim; c++) {
            for (size_t s = 0; s < n; s++) {
                in[s] = data[(b | li.offsets[s]) * dim + c];
            }
            for (size_t t = 0; t < n; t++) {
                Complex acc = 0;
                for (size_t s = 0; s < n; s++) {
                    acc += u(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)) * in[s];
                }
                out[t] = acc;
            }
            for (size_t s = 0; s < n; s++) {
                data[(b | li.offsets[s]) * dim + c] = out[s];
            }
        }
    }
    // Right multiplication by U^dagger mixes columns.
    for (Eigen::Index r = 0; r < dim; r++) {
        Complex *row = data + r * dim;
        for (Eigen::Index b = 0; b < dim; b++) {
            if (static_cast<uint64_t>(b) & li.mask) {
                continue;
            }
            for (size_t s = 0; s < n; s++) {
                in[s] = row[b | li.offsets[s]];
            }
            for (size_t t = 0; t < n; t++) {
                Complex acc = 0;
                for (size_t s = 0; s < n; s++) {
                    acc += in[s] * std::conj(u(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(s)));
                }
                out[t] = acc;
            }
            for (size_t s = 0; s < n; s++) {
                row[b | li.offsets[s]] = out[s];
            }
        }
    }
}

/// Tr(A B) without forming the product.
Complex trace_of_product(const RowMatrix &a, const RowMatrix &b) {
    return a.cwiseProduct(b.transpose()).sum();
}

/// M P for a Pauli string P: (M P)[r][c] = phase(c) M[r][c ^ x].
RowMatrix right_multiply_pauli(const RowMatrix &m, const PauliObservable &obs) {
    const uint64_t xm = obs.x_mask();
    const uint64_t zm = obs.z_mask();
    Complex global{1.0, 0.0};
    for (int k = 0; k < obs.y_count() % 4; k++) {
        global *= Complex{0.0, 1.0};
    }
    const Eigen::Index dim = m.rows();
    std::vector<Complex> phase(static_cast<size_t>(dim));
    for (Eigen::Index c = 0; c < dim; c++) {
        bool odd = std::popcount(static_cast<uint64_t>(c) & zm) & 1;
        phase[static_cast<size_t>(c)] = odd ? -global : global;
    }
    RowMatrix out(dim, dim);
    for (Eigen::Index r = 0; r < dim; r++) {
        for (Eigen::Index c = 0; c < dim; c++) {
            out(r, c) = phase[static_cast<size_t>(c)] * m(r, static_cast<Eigen::Index>(static_cast<uint64_t>(c) ^ xm));
        }
    }
    return out;
}

double real_part_checked(Complex v, const char *what) {
    if (std::abs(v.imag()) > 1e-8) {
        throw std::runtime_error(
            std::string(what) + " has imaginary residue " + std::to_string(v.imag()) + " above 1e-8.");
    }
    return v.real();
}

void check_dims(const DensityMatrix &state, const PauliObservable &obs) {
    if (state.num_qubits() != obs.num_qubits()) {
        throw std::invalid_argument(
            "Observable acts on " + std::to_string(obs.num_qubits()) + " qubits but the state has " +
            std::to_string(state.num_qubits()) + ".");
    }
}

}  // namespace

DensityMatrix::DensityMatrix(int num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits < 1 || num_qubits > kMaxQubits) {
        throw std::invalid_argument(
            "Qubit count " + std::to_string(num_qubits) + " outside [1, " + std::to_string(kMaxQubits) + "].");
    }
    Eigen::Index dim = Eigen::Index{1} << num_qubits;
    data_ = RowMatrix::Zero(dim, dim);
    data_(0, 0) = 1.0;
}

DensityMatrix::DensityMatrix(int num_qubits, RowMatrix data) : num_qubits_(num_qubits), data_(std::move(data)) {
}

DensityMatrix DensityMatrix::from_matrix(RowMatrix data) {
    if (data.rows() != data.cols()) {
        throw std::invalid_argument("Density matrix must be square.");
    }
    int q = qubits_for_dim(data.rows());
    if (q > kMaxQubits) {
        throw std::invalid_argument("Density matrix exceeds the qubit cap.");
    }
    DensityMatrix out(q, std::move(data));
    out.check_invariants();
    return out;
}

DensityMatrix DensityMatrix::from_pure_state(const Eigen::VectorXcd &psi) {
    int q = qubits_for_dim(psi.size());
    if (std::abs(psi.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("Pure state must be normalized.");
    }
    RowMatrix m = psi * psi.adjoint();
    return DensityMatrix(q, std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(int num_qubits) {
    DensityMatrix out(num_qubits);
    out.data_.setIdentity();
    out.data_ /= static_cast<double>(out.dim());
    return out;
}

void DensityMatrix::check_qubit(int qubit) const {
    if (qubit < 0 || qubit >= num_qubits_) {
        throw std::invalid_argument(
            "Qubit index " + std::to_string(qubit) + " out of range for " + std::to_string(num_qubits_) +
            " qubits.");
    }
}

void DensityMatrix::apply_unitary(const Eigen::MatrixXcd &u, std::span<const int> qubits) {
    for (size_t i = 0; i < qubits.size(); i++) {
        check_qubit(qubits[i]);
        for (size_t j = 0; j < i; j++) {
            if (qubits[i] == qubits[j]) {
                throw std::invalid_argument("Gate qubit indices must be distinct.");
            }
        }
    }
    Eigen::Index expected = Eigen::Index{1} << qubits.size();
    if (u.rows() != expected || u.cols() != expected) {
        throw std::invalid_argument("Unitary dimension does not match the number of target qubits.");
    }
    conjugate_in_place(data_, u, local_indexing(qubits));
#ifndef NDEBUG
    check_invariants();
#endif
}

void DensityMatrix::apply_unitary_mixture(
    std::span<const double> weights, std::span<const Eigen::MatrixXcd> unitaries, std::span<const int> qubits) {
    if (weights.size() != unitaries.size() || weights.empty()) {
        throw std::invalid_argument("Mixture needs one weight per unitary.");
    }
    if (weights.size() == 1) {
        apply_unitary(unitaries[0], qubits);
        return;
    }
    RowMatrix acc = RowMatrix::Zero(dim(), dim());
    const RowMatrix original = data_;
    for (size_t k = 0; k < weights.size(); k++) {
        data_ = original;
        apply_unitary(unitaries[k], qubits);
        acc += weights[k] * data_;
    }
    data_ = std::move(acc);
}

void DensityMatrix::apply_gate(const Gate &gate) {
    std::span<const int> qs(gate.qubits.data(), static_cast<size_t>(gate.arity()));
    apply_unitary(gate_unitary(gate.kind, gate.angle), qs);
}

void DensityMatrix::apply_depolarizing(double p, int qubit) {
    check_probability(p);
    check_qubit(qubit);
    if (p == 0.0) {
        return;
    }
    // Sum over all four Paulis of P rho P equals 2 Tr_q(rho) (x) I, so the channel is
    // (1 - 4p/3) rho + (2p/3) Tr_q(rho) (x) I.
    const double keep = 1.0 - 4.0 * p / 3.0;
    const double mix = 2.0 * p / 3.0;
    const Eigen::Index bit = Eigen::Index{1} << qubit;
    const Eigen::Index d = dim();
    for (Eigen::Index r = 0; r < d; r++) {
        if (r & bit) {
            continue;
        }
        for (Eigen::Index c = 0; c < d; c++) {
            if (c & bit) {
                continue;
            }
            Complex a = data_(r, c);
            Complex z = data_(r | bit, c | bit);
            Complex s = a + z;
            data_(r, c) = keep * a + mix * s;
            data_(r | bit, c | bit) = keep * z + mix * s;
            data_(r, c | bit) *= keep;
            data_(r | bit, c) *= keep;
        }
    }
#ifndef NDEBUG
    check_invariants();
#endif
}

void DensityMatrix::apply_global_depolarizing(double p) {
    check_probability(p);
    if (p == 0.0) {
        return;
    }
    data_ *= (1.0 - p);
    const double fill = p / static_cast<double>(dim());
    for (Eigen::Index k = 0; k < dim(); k++) {
        data_(k, k) += fill;
    }
}

void DensityMatrix::apply_dephasing(double p, int qubit) {
    check_probability(p);
    check_qubit(qubit);
    if (p == 0.0) {
        return;
    }
    const double scale = 1.0 - 2.0 * p;
    const Eigen::Index bit = Eigen::Index{1} << qubit;
    const Eigen::Index d = dim();
    for (Eigen::Index r = 0; r < d; r++) {
        for (Eigen::Index c = 0; c < d; c++) {
            if ((r ^ c) & bit) {
                data_(r, c) *= scale;
            }
        }
    }
}

void DensityMatrix::check_invariants(double tol) const {
    Complex tr = data_.trace();
    if (std::abs(tr - Complex{1.0, 0.0}) > tol) {
        throw std::runtime_error("Density matrix trace drifted to " + std::to_string(tr.real()) + ".");
    }
    double herm = (data_ - data_.adjoint()).cwiseAbs().maxCoeff();
    if (herm > tol) {
        throw std::runtime_error("Density matrix is not Hermitian (deviation " + std::to_string(herm) + ").");
    }
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::MatrixXcd h = data_;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h, Eigen::EigenvaluesOnly);
    return es.eigenvalues()(0);
}

DensityMatrix apply_gate(DensityMatrix state, const Gate &gate) {
    state.apply_gate(gate);
    return state;
}

DensityMatrix apply_depolarizing(DensityMatrix state, double p, int qubit) {
    state.apply_depolarizing(p, qubit);
    return state;
}

DensityMatrix apply_global_depolarizing(DensityMatrix state, double p) {
    state.apply_global_depolarizing(p);
    return state;
}

DensityMatrix apply_dephasing(DensityMatrix state, double p, int qubit) {
    state.apply_dephasing(p, qubit);
    return state;
}

Complex pauli_trace(const RowMatrix &m, const PauliObservable &obs) {
    const uint64_t xm = obs.x_mask();
    const uint64_t zm = obs.z_mask();
    Complex acc = 0;
    for (Eigen::Index c = 0; c < m.rows(); c++) {
        uint64_t uc = static_cast<uint64_t>(c);
        Complex v = m(c, static_cast<Eigen::Index>(uc ^ xm));
        acc += (std::popcount(uc & zm) & 1) ? -v : v;
    }
    Complex global{1.0, 0.0};
    for (int k = 0; k < obs.y_count() % 4; k++) {
        global *= Complex{0.0, 1.0};
    }
    return global * acc;
}

double expectation(const DensityMatrix &state, const PauliObservable &obs) {
    check_dims(state, obs);
    return real_part_checked(pauli_trace(state.data(), obs), "Tr(rho X)");
}

std::vector<VdExpectation> vd_expectations(const DensityMatrix &state, const PauliObservable &obs, int max_copies) {
    if (max_copies < 1) {
        throw std::invalid_argument("Copy count must be at least 1.");
    }
    check_dims(state, obs);
    const RowMatrix &rho = state.data();

    // powers[k] = rho^k for k up to ceil(max/2); Tr(rho^M Y) = Tr(rho^a rho^b Y) with a + b = M.
    int top = (max_copies + 1) / 2;
    std::vector<RowMatrix> powers;
    powers.push_back(RowMatrix::Identity(rho.rows(), rho.cols()));
    powers.push_back(rho);
    for (int k = 2; k <= top; k++) {
        powers.push_back(powers.back() * rho);
    }
    std::vector<RowMatrix> powers_x;
    for (int k = 0; k <= top; k++) {
        powers_x.push_back(right_multiply_pauli(powers[static_cast<size_t>(k)], obs));
    }

    std::vector<VdExpectation> out;
    double e1 = expectation(state, obs);
    out.push_back(VdExpectation{e1, state.trace(), e1});
    for (int m = 2; m <= max_copies; m++) {
        size_t a = static_cast<size_t>(m / 2);
        size_t b = static_cast<size_t>(m - m / 2);
        double num = real_part_checked(trace_of_product(powers[a], powers_x[b]), "Tr(rho^M X)");
        double den = real_part_checked(trace_of_product(powers[a], powers[b]), "Tr(rho^M)");
        if (den < 1e-14) {
            throw std::runtime_error("Tr(rho^M) below 1e-14; the state is numerically degenerate.");
        }
        out.push_back(VdExpectation{num, den, num / den});
    }
    return out;
}

VdExpectation vd_expectation(const DensityMatrix &state, const PauliObservable &obs, int copies) {
    return vd_expectations(state, obs, copies).back();
}

SpectralDiagnostics spectral_diagnostics(
    const DensityMatrix &state, const Eigen::VectorXcd &exact_state, const PauliObservable &obs) {
    check_dims(state, obs);
    if (exact_state.size() != state.dim()) {
        throw std::invalid_argument("Exact state dimension does not match the density matrix.");
    }
    if (std::abs(exact_state.norm() - 1.0) > 1e-10) {
        throw std::invalid_argument("Exact state must be normalized.");
    }
    Eigen::MatrixXcd h = state.data();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const auto &evals = es.eigenvalues();
    const Eigen::Index n = evals.size();
    // Eigenvalues come back ascending. Among eigenvalues tied with the maximum, take the lowest index.
    double top = evals(n - 1);
    Eigen::Index pick = n - 1;
    while (pick > 0 && top - evals(pick - 1) < 1e-12) {
        pick--;
    }
    bool reliable = pick == n - 1;
    Eigen::VectorXcd psi0 = es.eigenvectors().col(pick);

    double overlap = std::norm(exact_state.dot(psi0));
    double mismatch = std::max(0.0, 1.0 - overlap);
    double x0 = psi0.dot(obs.apply(psi0)).real();
    double xe = exact_state.dot(obs.apply(exact_state)).real();
    double floor = x0 - xe;

    double norm = obs.spectral_norm();
    if (std::abs(floor) > 2.0 * std::sqrt(mismatch) * norm + 1e-9) {
        throw std::logic_error("Noise floor exceeds the trace-distance bound.");
    }
    bool linear = std::abs(floor) <= 2.0 * mismatch * norm + 1e-12;
    return SpectralDiagnostics{mismatch, floor, top, reliable, linear};
}

}  // namespace qem
