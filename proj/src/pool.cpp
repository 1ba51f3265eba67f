#include "bornforge/pool.hpp"

#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace bornforge {

GateInstance PoolOperator::instance(int slot) const {
    return make_gate(kind, q0, q1, slot);
}

std::array<Eigen::Matrix4d, 6> so4_generator_set() {
    using Eigen::Matrix2cd;
    using Eigen::Matrix4cd;
    Matrix2cd id = Matrix2cd::Identity();
    Matrix2cd x, y, z;
    x << 0, 1, 1, 0;
    y << 0, cplx(0, -1), cplx(0, 1), 0;
    z << 1, 0, 0, -1;

    const auto kron = [](const Matrix2cd& a, const Matrix2cd& b) -> Matrix4cd {
        return Eigen::kroneckerProduct(a, b);
    };
    const cplx half_i(0.0, 0.5);
    const std::array<Matrix4cd, 6> gens = {
        -half_i * kron(z, y), -half_i * kron(y, id), -half_i * kron(x, y),
        -half_i * kron(id, y), half_i * kron(y, z),  -half_i * kron(y, x),
    };
    std::array<Eigen::Matrix4d, 6> out;
    for (int g = 0; g < 6; ++g) out[static_cast<std::size_t>(g)] = gens[static_cast<std::size_t>(g)].real();
    return out;
}

OperatorPool build_full_pool(int n_qubits) {
    if (n_qubits < 2) throw std::invalid_argument("pool needs at least two qubits");
    OperatorPool pool;
    pool.n_qubits = n_qubits;
    for (GateKind kind : {GateKind::ZY, GateKind::XY, GateKind::CRY}) {
        for (int i = 0; i < n_qubits; ++i)
            for (int j = 0; j < n_qubits; ++j)
                if (i != j) pool.operators.push_back({kind, i, j});
    }
    for (int i = 0; i < n_qubits; ++i) pool.operators.push_back({GateKind::RY, i, -1});
    return pool;
}

OperatorPool build_reduced_pool(const OperatorPool& pool, const Eigen::MatrixXd& mi, double r) {
    if (r < 0.0 || r > 1.0) throw std::invalid_argument("reduction rate must be in [0, 1]");
    if (mi.rows() != pool.n_qubits || mi.cols() != pool.n_qubits)
        throw std::invalid_argument("mutual-information matrix has wrong shape");
    const double i_max = mi.maxCoeff();
    OperatorPool out;
    out.n_qubits = pool.n_qubits;
    for (const PoolOperator& op : pool.operators) {
        if (!op.two_qubit() || mi(op.q0, op.q1) >= r * i_max) out.operators.push_back(op);
    }
    return out;
}

}  // namespace bornforge
