#include "bornforge/gates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace bornforge {

namespace {

struct KindInfo {
    std::string_view name;
    bool two_qubit;
    bool parameterized;
    bool real;
    PauliAxis a0;
    PauliAxis a1;
};

constexpr PauliAxis I = PauliAxis::I;
constexpr PauliAxis X = PauliAxis::X;
constexpr PauliAxis Y = PauliAxis::Y;
constexpr PauliAxis Z = PauliAxis::Z;

// Indexed by GateKind. A gate is real exactly when its generator carries an
// odd number of Pauli-Y factors (plus the fixed CZ).
constexpr KindInfo kKinds[kGateKindCount] = {
    {"RY", false, true, true, Y, I},   //
    {"ZY", true, true, true, Z, Y},    //
    {"XY", true, true, true, X, Y},    //
    {"CRY", true, true, true, I, I},   //
    {"RX", false, true, false, X, I},  //
    {"RZ", false, true, false, Z, I},  //
    {"CZ", true, false, true, I, I},   //
    {"CRZ", true, true, false, I, I},  //
    {"XX", true, true, false, X, X},   //
    {"XZ", true, true, false, X, Z},   //
    {"XI", true, true, false, X, I},   //
    {"YX", true, true, true, Y, X},    //
    {"YY", true, true, false, Y, Y},   //
    {"YZ", true, true, true, Y, Z},    //
    {"YI", true, true, true, Y, I},    //
    {"ZX", true, true, false, Z, X},   //
    {"ZZ", true, true, false, Z, Z},   //
    {"ZI", true, true, false, Z, I},   //
    {"IX", true, true, false, I, X},   //
    {"IY", true, true, true, I, Y},    //
    {"IZ", true, true, false, I, Z},   //
};

const KindInfo& info(GateKind kind) { return kKinds[static_cast<int>(kind)]; }

bool is_pauli_pair(GateKind kind) {
    switch (kind) {
        case GateKind::RY:
        case GateKind::CRY:
        case GateKind::RX:
        case GateKind::RZ:
        case GateKind::CZ:
        case GateKind::CRZ:
            return false;
        default:
            return true;
    }
}

// 2x2 Pauli matrices, row-major.
Mat2 pauli(PauliAxis axis) {
    switch (axis) {
        case PauliAxis::I: return {1.0, 0.0, 0.0, 1.0};
        case PauliAxis::X: return {0.0, 1.0, 1.0, 0.0};
        case PauliAxis::Y: return {0.0, cplx(0.0, -1.0), cplx(0.0, 1.0), 0.0};
        case PauliAxis::Z: return {1.0, 0.0, 0.0, -1.0};
    }
    throw std::logic_error("bad axis");
}

Mat4 kron2(const Mat2& a, const Mat2& b) {
    Mat4 out{};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            out[static_cast<std::size_t>(r) * 4 + c] = a[(r / 2) * 2 + c / 2] * b[(r % 2) * 2 + c % 2];
    return out;
}

}  // namespace

bool is_two_qubit(GateKind kind) { return info(kind).two_qubit; }
bool is_parameterized(GateKind kind) { return info(kind).parameterized; }
bool has_real_matrix(GateKind kind) { return info(kind).real; }

bool has_involutory_generator(GateKind kind) {
    return is_parameterized(kind) && !is_controlled_rotation(kind);
}

bool is_controlled_rotation(GateKind kind) {
    return kind == GateKind::CRY || kind == GateKind::CRZ;
}

std::array<PauliAxis, 2> pauli_axes(GateKind kind) {
    const KindInfo& k = info(kind);
    return {k.a0, k.a1};
}

std::string_view gate_name(GateKind kind) { return info(kind).name; }

GateKind gate_kind_from_name(std::string_view name) {
    for (int i = 0; i < kGateKindCount; ++i)
        if (kKinds[i].name == name) return static_cast<GateKind>(i);
    throw std::invalid_argument("unknown gate kind: " + std::string(name));
}

Mat2 gate_matrix_1q(GateKind kind, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    switch (kind) {
        case GateKind::RY: return {c, -s, s, c};
        case GateKind::RX: return {c, cplx(0.0, -s), cplx(0.0, -s), c};
        case GateKind::RZ: return {cplx(c, -s), 0.0, 0.0, cplx(c, s)};
        default: throw std::invalid_argument("not a single-qubit gate kind");
    }
}

Mat4 gate_matrix_2q(GateKind kind, double theta) {
    const double c = std::cos(theta / 2.0);
    const double s = std::sin(theta / 2.0);
    switch (kind) {
        case GateKind::CZ:
            return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 1, 0, 0, 0, 0, -1};
        case GateKind::CRY:
            return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, c, -s, 0, 0, s, c};
        case GateKind::CRZ:
            return {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, cplx(c, -s), 0, 0, 0, 0, cplx(c, s)};
        default: break;
    }
    if (!is_pauli_pair(kind) || !is_two_qubit(kind))
        throw std::invalid_argument("not a two-qubit gate kind");
    // e^{-i theta P/2} = cos(theta/2) I - i sin(theta/2) P for P = a0 x a1.
    const auto axes = pauli_axes(kind);
    const Mat4 p = kron2(pauli(axes[0]), pauli(axes[1]));
    Mat4 out{};
    for (int d = 0; d < 4; ++d) out[static_cast<std::size_t>(d) * 4 + d] = c;
    for (std::size_t e = 0; e < 16; ++e) out[e] += cplx(0.0, -s) * p[e];
    return out;
}

Mat2r gate_matrix_1q_real(GateKind kind, double theta) {
    if (!has_real_matrix(kind)) throw std::invalid_argument("gate is not real-valued");
    const Mat2 m = gate_matrix_1q(kind, theta);
    return {m[0].real(), m[1].real(), m[2].real(), m[3].real()};
}

Mat4r gate_matrix_2q_real(GateKind kind, double theta) {
    if (!has_real_matrix(kind)) throw std::invalid_argument("gate is not real-valued");
    const Mat4 m = gate_matrix_2q(kind, theta);
    Mat4r out{};
    for (std::size_t e = 0; e < 16; ++e) out[e] = m[e].real();
    return out;
}

GateCost gate_cost(GateKind kind) {
    switch (kind) {
        case GateKind::RY:
        case GateKind::RX:
        case GateKind::RZ:
            return {1, 0, 1};
        case GateKind::CRY:
        case GateKind::CRZ:
        case GateKind::CZ:
            return {0, 1, 1};
        default: break;
    }
    const auto axes = pauli_axes(kind);
    if (axes[0] == PauliAxis::I || axes[1] == PauliAxis::I) return {1, 0, 1};
    // CX . RZ . CX core plus single-qubit basis changes on X/Y axes.
    const int changes = (axes[0] != PauliAxis::Z ? 1 : 0) + (axes[1] != PauliAxis::Z ? 1 : 0);
    return {1 + 2 * changes, 2, changes > 0 ? 5 : 3};
}

}  // namespace bornforge
