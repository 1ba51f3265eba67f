#pragma once

#include <Eigen/Core>
#include <array>
#include <vector>

#include "bornforge/statevector.hpp"

namespace bornforge {

/// Candidate gate descriptor: ZY/XY/CRY on an ordered qubit pair, or RY on a
/// single qubit.
struct PoolOperator {
    GateKind kind = GateKind::RY;
    int q0 = 0;
    int q1 = -1;  // -1 for RY

    bool two_qubit() const { return kind != GateKind::RY; }
    GateInstance instance(int slot = -1) const;
    friend bool operator==(const PoolOperator&, const PoolOperator&) = default;
};

struct OperatorPool {
    int n_qubits = 0;
    std::vector<PoolOperator> operators;

    std::size_t size() const { return operators.size(); }
};

/// The six antisymmetric generators of so(4) used by the pool, in the order
/// matching the conjugated Paulis {X1, Y1, Z1, X2, Y2, Z2}:
/// -(i/2) {Z1Y2, Y1, X1Y2, Y2, -Y1Z2, Y1X2}.
std::array<Eigen::Matrix4d, 6> so4_generator_set();

/// Ordered pairs for ZY, XY, CRY plus RY on every qubit: 3n(n-1) + n entries.
OperatorPool build_full_pool(int n_qubits);

/// Keeps two-qubit operators whose qubit pair has mutual information at least
/// r times the maximum entry of mi; single-qubit operators always stay.
OperatorPool build_reduced_pool(const OperatorPool& pool, const Eigen::MatrixXd& mi, double r);

}  // namespace bornforge
