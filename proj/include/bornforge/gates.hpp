#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

namespace bornforge {

using cplx = std::complex<double>;

/// Parameterized gate kinds. The first four form the adaptive operator pool;
/// RX/RZ/CZ/CRZ appear in the fixed-ansatz baselines; the remaining two-qubit
/// Pauli rotations e^{-i theta (sigma_a x sigma_b) / 2} build the MPS blocks.
/// ZY and XY double as pool gates and Pauli-pair rotations.
enum class GateKind : std::uint8_t {
    RY,
    ZY,
    XY,
    CRY,
    RX,
    RZ,
    CZ,
    CRZ,
    XX,
    XZ,
    XI,
    YX,
    YY,
    YZ,
    YI,
    ZX,
    ZZ,
    ZI,
    IX,
    IY,
    IZ,
};

inline constexpr int kGateKindCount = 21;

enum class PauliAxis : std::uint8_t { I, X, Y, Z };

bool is_two_qubit(GateKind kind);
bool is_parameterized(GateKind kind);

/// True when the gate matrix has real entries for every angle. Such gates
/// keep real statevectors real, which is what makes the pool trainable from
/// the all-real initial state (imaginary generators give nonzero gradients).
bool has_real_matrix(GateKind kind);

/// True for kinds of the form e^{-i theta P/2} with involutory generator P
/// (single-axis rotations and Pauli pairs). False for controlled rotations,
/// which are differentiated through their two-rotation decomposition.
bool has_involutory_generator(GateKind kind);

bool is_controlled_rotation(GateKind kind);  // CRY or CRZ

/// For Pauli-pair kinds, the two axes (first = qubit q0, second = q1).
std::array<PauliAxis, 2> pauli_axes(GateKind kind);

std::string_view gate_name(GateKind kind);
GateKind gate_kind_from_name(std::string_view name);

using Mat2 = std::array<cplx, 4>;    // row-major 2x2
using Mat4 = std::array<cplx, 16>;   // row-major 4x4
using Mat2r = std::array<double, 4>;
using Mat4r = std::array<double, 16>;

Mat2 gate_matrix_1q(GateKind kind, double theta);
Mat4 gate_matrix_2q(GateKind kind, double theta);

/// Real-entry variants, valid only when has_real_matrix(kind).
Mat2r gate_matrix_1q_real(GateKind kind, double theta);
Mat4r gate_matrix_2q_real(GateKind kind, double theta);

/// Elementary-gate accounting used for resource metrics. depth_span is the
/// number of circuit layers the decomposed gate occupies (a two-qubit Pauli
/// rotation with basis changes spans 5 layers; controlled and single-qubit
/// rotations span 1).
struct GateCost {
    int one_qubit = 0;
    int two_qubit = 0;
    int depth_span = 1;
};

GateCost gate_cost(GateKind kind);

}  // namespace bornforge
