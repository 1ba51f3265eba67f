#pragma once

#include <cstdint>

#include "bornforge/trainer.hpp"

namespace bornforge {

enum class AnsatzFamily { Structure1, Structure2, MPS };

struct FixedAnsatzSpec {
    AnsatzFamily family = AnsatzFamily::Structure2;
    int n_qubits = 2;
    int depth = 1;
    std::uint64_t seed = 0;  // Gaussian(0, pi/8) parameter init
};

/// k+1 layers of RX RY RX rotations alternated with k CZ rings on the
/// (i, i+1 mod n) neighbors; 3n(k+1) parameters.
Circuit build_structure1(int n_qubits, int k);

/// k layers of RY rotations alternated with k parameterized CRZ rings;
/// 2kn parameters.
Circuit build_structure2(int n_qubits, int k);

/// k staircase sweeps of two-qubit blocks on (q, q+1), each block a fixed
/// lexicographic product of the 15 non-identity two-qubit Pauli rotations;
/// 15 k (n-1) parameters.
Circuit build_mps_circuit(int n_qubits, int k);

Circuit build_fixed_ansatz(const FixedAnsatzSpec& spec);

/// Gaussian(mu = 0, sigma = pi/8) draws for fixed-ansatz initialization.
std::vector<double> gaussian_init(std::size_t count, std::uint64_t seed);

struct FixedTrainConfig {
    LossKind loss;
    AdamParams adam;
    bool adaptive_lr = true;  // lr = alpha ||g|| / sqrt(n_params), else fixed lr
    double alpha = 0.1;
    double lr = 0.01;
    double eps2 = 1e-4;
    int max_epochs = 2000;
};

/// ADAM descent on all parameters of a fixed-topology circuit. The incoming
/// circuit carries the initial theta.
TrainResult train_fixed(const Circuit& circuit, const TargetDistribution& target,
                        const FixedTrainConfig& config);

}  // namespace bornforge
