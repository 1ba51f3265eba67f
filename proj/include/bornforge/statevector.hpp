#pragma once

#include <Eigen/Core>
#include <cstdint>
#include <span>
#include <vector>

#include "bornforge/gates.hpp"

namespace bornforge {

/// One gate in a circuit. q1 is ignored for single-qubit kinds; slot indexes
/// the shared parameter vector and is -1 for fixed gates (CZ).
struct GateInstance {
    GateKind kind = GateKind::RY;
    std::uint8_t q0 = 0;
    std::uint8_t q1 = 0;
    std::int32_t slot = -1;
};

GateInstance make_gate(GateKind kind, int q0, int q1 = -1, int slot = -1);

struct Circuit {
    int n_qubits = 0;
    std::vector<GateInstance> gates;
    std::vector<double> theta;

    /// Appends a parameterized gate with a fresh slot; returns the slot.
    int push_parameterized(GateKind kind, int q0, int q1, double value);
    void push_fixed(GateKind kind, int q0, int q1);

    int n_params() const { return static_cast<int>(theta.size()); }

    /// All gate kinds preserve real amplitudes (enables the real fast path).
    bool real_valued() const;

    /// Checks qubit ranges, slot ranges, and that every slot is referenced.
    void validate() const;
};

using DensityMatrix4 = Eigen::Matrix4cd;

class StateVector {
  public:
    StateVector() = default;
    StateVector(int n_qubits, std::vector<cplx> amps);

    static StateVector zero_state(int n_qubits);

    int n_qubits() const { return n_qubits_; }
    std::size_t dim() const { return amps_.size(); }
    const std::vector<cplx>& amplitudes() const { return amps_; }
    std::vector<cplx>& amplitudes() { return amps_; }

    double norm_sq() const;
    double max_abs_imag() const;

    void apply_inplace(const GateInstance& gate, double theta_val);

  private:
    int n_qubits_ = 0;
    std::vector<cplx> amps_;
};

StateVector init_basis_state(int n_qubits, std::uint64_t x);
StateVector apply_gate(const StateVector& state, const GateInstance& gate, double theta_val);
StateVector run_circuit(const Circuit& circuit);
StateVector run_circuit(const Circuit& circuit, std::span<const double> theta);

std::vector<double> born_probabilities(const StateVector& state);

/// Partial trace down to qubits (i, j), with i the first tensor factor.
DensityMatrix4 reduced_density_2q(const StateVector& state, int qi, int qj);

// Real-amplitude fast path. Valid only for circuits whose gates all have
// real matrices; agrees with the complex reference path to floating-point
// rounding.
std::vector<double> run_circuit_real(const Circuit& circuit, std::span<const double> theta);
std::vector<double> born_probabilities_real(const std::vector<double>& amps);

// Raw-amplitude gate application shared by both paths.
void apply_gate_inplace(std::vector<cplx>& amps, int n_qubits, const GateInstance& gate,
                        double theta_val);
void apply_gate_inplace(std::vector<double>& amps, int n_qubits, const GateInstance& gate,
                        double theta_val);

}  // namespace bornforge
