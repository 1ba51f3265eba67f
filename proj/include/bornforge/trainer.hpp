#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bornforge/losses.hpp"
#include "bornforge/pool.hpp"

namespace bornforge {

struct AdamParams {
    double beta1 = 0.9;
    double beta2 = 0.999;
    double eps = 1e-8;
};

enum class AppendOrder { DescendingGradient, Randomized };

struct TrainConfig {
    int n_ops = 3;         // operators appended per iteration (N_o)
    double eps1 = 1e-3;    // stop when the largest pool gradient drops below
    double eps2 = 5e-3;    // inner loop stops when ||g||_2 drops below
    double alpha = 0.1;    // learning-rate scale, lr = alpha ||g|| / sqrt(N_o)
    AdamParams adam;
    int max_iterations = 100;
    int max_epochs = 500;  // per iteration
    LossKind loss;
    AppendOrder append_order = AppendOrder::DescendingGradient;
    std::uint64_t seed = 0;

    void validate() const;
};

struct OptimizerState {
    std::vector<double> m;
    std::vector<double> v;
    long t = 0;

    /// New parameter slots enter with zero moments.
    void resize(std::size_t n);
};

struct EpochRecord {
    int iteration = 0;
    int epoch = 0;
    double loss = 0.0;
    double grad_norm = 0.0;
    double lr = 0.0;
    int n_params = 0;
    std::uint64_t measurements = 0;  // cumulative
};

struct IterationRecord {
    int iteration = 0;
    double max_pool_gradient = 0.0;
    std::vector<int> selected;  // pool indices, in append order
    std::vector<double> selected_gradients;
    int epochs_run = 0;
};

struct ResourceCounts {
    int parameters = 0;
    int one_qubit_gates = 0;
    int two_qubit_gates = 0;
    int depth = 0;
};

struct TrainReport {
    std::vector<EpochRecord> epochs;
    std::vector<IterationRecord> iterations;
    int pool_scorings = 0;  // each costs 2 x |pool| measurements
    std::uint64_t total_measurements = 0;
    bool converged = false;  // stopped on eps1 rather than the iteration cap
    double final_loss = 0.0;
    double final_kl = 0.0;
    double final_fisher_rao = 0.0;
    ResourceCounts resources;
    int floor_hits = 0;
};

struct TrainResult {
    Circuit circuit;  // theta holds the trained parameters
    TrainReport report;
};

/// One trainable RY(pi/2) per qubit; prepares the uniform superposition.
Circuit init_ansatz(int n_qubits);

/// Indices of the n_ops largest |gradients|, in descending magnitude with
/// ties broken by ascending index.
std::vector<int> select_top_operators(std::span<const double> gradients, int n_ops);

/// alpha * ||g||_2 / sqrt(n_ops), floored at 1e-6.
double adaptive_learning_rate(std::span<const double> g, int n_ops, double alpha);

/// Standard bias-corrected ADAM step.
void adam_update(std::vector<double>& theta, std::span<const double> grads, double lr,
                 OptimizerState& state, const AdamParams& params);

ResourceCounts count_resources(const Circuit& circuit);

/// The adaptive loop: score the pool at zero-angle insertions, stop when the
/// top gradient falls below eps1, otherwise append the top N_o operators and
/// re-optimize every parameter with ADAM under the adaptive learning rate.
TrainResult train_aclbm(const TargetDistribution& target, const OperatorPool& pool,
                        const TrainConfig& config);

}  // namespace bornforge
