#include "bornforge/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "bornforge/kernels.hpp"

namespace bornforge {

namespace {

int bit_pos(int n_qubits, int qubit) { return n_qubits - 1 - qubit; }

void check_qubits(int n_qubits, const GateInstance& gate) {
    if (gate.q0 >= n_qubits) throw std::out_of_range("gate qubit out of range");
    if (is_two_qubit(gate.kind)) {
        if (gate.q1 >= n_qubits) throw std::out_of_range("gate qubit out of range");
        if (gate.q0 == gate.q1) throw std::invalid_argument("two-qubit gate needs distinct qubits");
    }
}

template <class T>
void apply_dispatch(std::vector<T>& amps, int n_qubits, const GateInstance& gate,
                    double theta_val) {
    check_qubits(n_qubits, gate);
    if constexpr (std::is_same_v<T, double>) {
        if (is_two_qubit(gate.kind)) {
            const Mat4r u = gate_matrix_2q_real(gate.kind, theta_val);
            kernels::apply_2q(amps.data(), amps.size(), bit_pos(n_qubits, gate.q0),
                              bit_pos(n_qubits, gate.q1), u);
        } else {
            const Mat2r u = gate_matrix_1q_real(gate.kind, theta_val);
            kernels::apply_1q(amps.data(), amps.size(), bit_pos(n_qubits, gate.q0), u);
        }
    } else {
        // Real-entry matrices are applied with real scalars even on complex
        // states; the products come out identical and cost half the flops.
        if (is_two_qubit(gate.kind)) {
            if (has_real_matrix(gate.kind)) {
                const Mat4r u = gate_matrix_2q_real(gate.kind, theta_val);
                kernels::apply_2q(amps.data(), amps.size(), bit_pos(n_qubits, gate.q0),
                                  bit_pos(n_qubits, gate.q1), u);
            } else {
                const Mat4 u = gate_matrix_2q(gate.kind, theta_val);
                kernels::apply_2q(amps.data(), amps.size(), bit_pos(n_qubits, gate.q0),
                                  bit_pos(n_qubits, gate.q1), u);
            }
        } else {
            if (has_real_matrix(gate.kind)) {
                const Mat2r u = gate_matrix_1q_real(gate.kind, theta_val);
                kernels::apply_1q(amps.data(), amps.size(), bit_pos(n_qubits, gate.q0), u);
            } else {
                const Mat2 u = gate_matrix_1q(gate.kind, theta_val);
                kernels::apply_1q(amps.data(), amps.size(), bit_pos(n_qubits, gate.q0), u);
            }
        }
    }
}

}  // namespace

GateInstance make_gate(GateKind kind, int q0, int q1, int slot) {
    GateInstance g;
    g.kind = kind;
    g.q0 = static_cast<std::uint8_t>(q0);
    g.q1 = static_cast<std::uint8_t>(q1 < 0 ? 0 : q1);
    g.slot = slot;
    if (is_two_qubit(kind) && q1 < 0)
        throw std::invalid_argument("two-qubit gate needs a second qubit");
    return g;
}

int Circuit::push_parameterized(GateKind kind, int q0, int q1, double value) {
    if (!is_parameterized(kind)) throw std::invalid_argument("gate kind takes no parameter");
    const int slot = n_params();
    gates.push_back(make_gate(kind, q0, q1, slot));
    theta.push_back(value);
    return slot;
}

void Circuit::push_fixed(GateKind kind, int q0, int q1) {
    if (is_parameterized(kind)) throw std::invalid_argument("gate kind takes a parameter");
    gates.push_back(make_gate(kind, q0, q1, -1));
}

bool Circuit::real_valued() const {
    return std::all_of(gates.begin(), gates.end(),
                       [](const GateInstance& g) { return has_real_matrix(g.kind); });
}

void Circuit::validate() const {
    std::vector<char> used(theta.size(), 0);
    for (const GateInstance& g : gates) {
        check_qubits(n_qubits, g);
        if (is_parameterized(g.kind)) {
            if (g.slot < 0 || g.slot >= n_params())
                throw std::out_of_range("parameter slot out of range");
            used[static_cast<std::size_t>(g.slot)] = 1;
        }
    }
    if (std::find(used.begin(), used.end(), 0) != used.end())
        throw std::invalid_argument("unreferenced parameter slot");
}

StateVector::StateVector(int n_qubits, std::vector<cplx> amps)
    : n_qubits_(n_qubits), amps_(std::move(amps)) {
    if (amps_.size() != (std::size_t{1} << n_qubits))
        throw std::invalid_argument("amplitude vector length must be 2^n");
}

StateVector StateVector::zero_state(int n_qubits) { return init_basis_state(n_qubits, 0); }

double StateVector::norm_sq() const {
    double s = 0.0;
    for (const cplx& a : amps_) s += std::norm(a);
    return s;
}

double StateVector::max_abs_imag() const {
    double m = 0.0;
    for (const cplx& a : amps_) m = std::max(m, std::abs(a.imag()));
    return m;
}

void StateVector::apply_inplace(const GateInstance& gate, double theta_val) {
    apply_dispatch(amps_, n_qubits_, gate, theta_val);
}

StateVector init_basis_state(int n_qubits, std::uint64_t x) {
    if (n_qubits < 1 || n_qubits > 30) throw std::invalid_argument("unsupported qubit count");
    const std::size_t dim = std::size_t{1} << n_qubits;
    if (x >= dim) throw std::out_of_range("basis index out of range");
    std::vector<cplx> amps(dim, 0.0);
    amps[x] = 1.0;
    return StateVector(n_qubits, std::move(amps));
}

StateVector apply_gate(const StateVector& state, const GateInstance& gate, double theta_val) {
    StateVector out = state;
    out.apply_inplace(gate, theta_val);
    return out;
}

StateVector run_circuit(const Circuit& circuit) {
    return run_circuit(circuit, circuit.theta);
}

StateVector run_circuit(const Circuit& circuit, std::span<const double> theta) {
    if (theta.size() != circuit.theta.size())
        throw std::invalid_argument("theta length does not match circuit slot count");
    StateVector state = StateVector::zero_state(circuit.n_qubits);
    for (const GateInstance& g : circuit.gates)
        state.apply_inplace(g, g.slot >= 0 ? theta[static_cast<std::size_t>(g.slot)] : 0.0);
    return state;
}

std::vector<double> born_probabilities(const StateVector& state) {
    std::vector<double> q(state.dim());
    const std::vector<cplx>& a = state.amplitudes();
    for (std::size_t x = 0; x < q.size(); ++x) q[x] = std::norm(a[x]);
    return q;
}

DensityMatrix4 reduced_density_2q(const StateVector& state, int qi, int qj) {
    const int n = state.n_qubits();
    if (qi == qj) throw std::invalid_argument("reduced density needs distinct qubits");
    if (qi < 0 || qj < 0 || qi >= n || qj >= n) throw std::out_of_range("qubit out of range");

    const std::size_t si = std::size_t{1} << (n - 1 - qi);
    const std::size_t sj = std::size_t{1} << (n - 1 - qj);
    const int lo = std::min(n - 1 - qi, n - 1 - qj);
    const int hi = std::max(n - 1 - qi, n - 1 - qj);
    const std::size_t mlo = (std::size_t{1} << lo) - 1;
    const std::size_t mhi = (std::size_t{1} << hi) - 1;

    DensityMatrix4 rho = DensityMatrix4::Zero();
    const std::vector<cplx>& a = state.amplitudes();
    const std::size_t rest = state.dim() / 4;
    for (std::size_t k = 0; k < rest; ++k) {
        const std::size_t t = ((k & ~mlo) << 1) | (k & mlo);
        const std::size_t base = ((t & ~mhi) << 1) | (t & mhi);
        cplx v[4];
        for (int r = 0; r < 4; ++r)
            v[r] = a[base | ((r & 2) ? si : 0) | ((r & 1) ? sj : 0)];
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) rho(r, c) += v[r] * std::conj(v[c]);
    }
    return rho;
}

std::vector<double> run_circuit_real(const Circuit& circuit, std::span<const double> theta) {
    if (!circuit.real_valued())
        throw std::invalid_argument("circuit contains complex-valued gates");
    if (theta.size() != circuit.theta.size())
        throw std::invalid_argument("theta length does not match circuit slot count");
    std::vector<double> amps(std::size_t{1} << circuit.n_qubits, 0.0);
    amps[0] = 1.0;
    for (const GateInstance& g : circuit.gates)
        apply_gate_inplace(amps, circuit.n_qubits, g,
                           g.slot >= 0 ? theta[static_cast<std::size_t>(g.slot)] : 0.0);
    return amps;
}

void apply_gate_inplace(std::vector<cplx>& amps, int n_qubits, const GateInstance& gate,
                        double theta_val) {
    apply_dispatch(amps, n_qubits, gate, theta_val);
}

void apply_gate_inplace(std::vector<double>& amps, int n_qubits, const GateInstance& gate,
                        double theta_val) {
    apply_dispatch(amps, n_qubits, gate, theta_val);
}

std::vector<double> born_probabilities_real(const std::vector<double>& amps) {
    std::vector<double> q(amps.size());
    for (std::size_t x = 0; x < q.size(); ++x) q[x] = amps[x] * amps[x];
    return q;
}

}  // namespace bornforge
