#pragma once

#include <Eigen/Dense>
#include <vector>

#include "bornforge/statevector.hpp"

namespace bornforge {

enum class CorrelationMetric { QMI, Eof };

/// Symmetric nonnegative pairwise-correlation matrix with zero diagonal.
struct CorrelationMatrix {
    int n_qubits = 0;
    CorrelationMetric metric = CorrelationMetric::QMI;
    std::vector<double> values;  // row-major n x n

    double at(int i, int j) const {
        return values[static_cast<std::size_t>(i) * n_qubits + j];
    }
    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * n_qubits + j]; }
    double max_off_diagonal() const;
};

/// -sum lambda log lambda over eigenvalues above 1e-12, in the given base.
double von_neumann_entropy(const Eigen::MatrixXcd& rho, double log_base = 2.0);

/// Quantum mutual information I(i:j) = S(rho_i) + S(rho_j) - S(rho_ij) of
/// every qubit pair, base-2 logs, computed once per unordered pair.
CorrelationMatrix mutual_information_matrix(const StateVector& state);

/// Wootters concurrence of a two-qubit density matrix.
double concurrence(const DensityMatrix4& rho);

/// Closed-form entanglement of formation h((1 + sqrt(1 - C^2)) / 2).
double entanglement_of_formation(const DensityMatrix4& rho);

CorrelationMatrix eof_matrix(const StateVector& state);

/// Phase-free amplitude embedding sqrt(p(x)) |x> of a distribution, used to
/// evaluate target-state correlations.
StateVector amplitude_state(std::span<const double> p);

}  // namespace bornforge
