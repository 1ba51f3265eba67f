#pragma once

#include <span>
#include <vector>

#include "bornforge/pool.hpp"
#include "bornforge/statevector.hpp"

namespace bornforge {

struct TargetDistribution {
    int n_qubits = 0;
    std::vector<double> p;

    void validate() const;  // nonnegative, sums to 1 within 1e-10, length 2^n
};

TargetDistribution make_target(int n_qubits, std::vector<double> p);

enum class LossTag { KL, FisherRao, MMD, LogMMD };

struct LossKind {
    LossTag tag = LossTag::KL;
    std::vector<double> sigmas;  // RBF bandwidths, MMD variants only

    static LossKind kl() { return {LossTag::KL, {}}; }
    static LossKind fisher_rao() { return {LossTag::FisherRao, {}}; }
    static LossKind mmd(int n_qubits);
    static LossKind log_mmd(int n_qubits);

    void validate() const;
};

/// Default bandwidths {1/2, 1, 2, 4} scaled by 2^n/8.
std::vector<double> default_mmd_sigmas(int n_qubits);

// q values are clamped below by kQFloor inside KL and gradient denominators;
// kMmdFloor sits inside the LogMMD logarithm.
inline constexpr double kQFloor = 1e-12;
inline constexpr double kMmdFloor = 1e-30;

/// Natural-log KL divergence, summed over the support of p.
double kl_divergence(std::span<const double> p, std::span<const double> q);

/// arccos of the Bhattacharyya coefficient, in [0, pi/2].
double fisher_rao(std::span<const double> p, std::span<const double> q);

/// Squared maximum mean discrepancy under the kernel
/// K(x, y) = mean_sigma exp(-|x - y| / (2 sigma^2)), evaluated exactly;
/// log_form returns ln(MMD + kMmdFloor).
double mmd(std::span<const double> p, std::span<const double> q,
           std::span<const double> sigmas, bool log_form);

double loss_value(std::span<const double> p, std::span<const double> q, const LossKind& kind);

/// Loss value plus the weights w with dL/dtheta_k = sum_x w(x) dq(x)/dtheta_k.
struct LossEval {
    double value = 0.0;
    std::vector<double> weights;
    int floor_hits = 0;  // q below kQFloor inside the support of p
};

LossEval loss_and_weights(std::span<const double> p, std::span<const double> q,
                          const LossKind& kind);

struct GradientResult {
    double loss = 0.0;
    std::vector<double> grad;
    int floor_hits = 0;
};

/// Exact gradient of the loss for every parameter slot via the parameter-shift
/// rule: dq/dtheta = (q(+pi/2) - q(-pi/2)) / 2 for involutory generators, and
/// the two-rotation decomposition CR(theta) = R(theta/2) CX R(-theta/2) CX for
/// controlled rotations. Gate sweeps run in parallel; the result is
/// deterministic.
GradientResult loss_gradient(const Circuit& circuit, std::span<const double> theta,
                             const TargetDistribution& target, const LossKind& kind);

/// Gradient of the loss with op appended at angle zero, sharing the unshifted
/// probability evaluation.
double candidate_gradient(const Circuit& circuit, std::span<const double> theta,
                          const PoolOperator& op, const TargetDistribution& target,
                          const LossKind& kind);

/// Scores every pool operator against an already-prepared state (parallel map
/// with per-candidate output slots).
std::vector<double> score_candidates(const StateVector& psi,
                                     std::span<const PoolOperator> ops,
                                     const TargetDistribution& target, const LossKind& kind);
std::vector<double> score_candidates_real(const std::vector<double>& amps, int n_qubits,
                                          std::span<const PoolOperator> ops,
                                          const TargetDistribution& target,
                                          const LossKind& kind);

/// d loss / d theta at theta = 0 for a single appended gate, given loss
/// weights for the current state.
double gate_gradient_at_zero(const std::vector<cplx>& amps, int n_qubits,
                             const GateInstance& gate, std::span<const double> weights);
double gate_gradient_at_zero(const std::vector<double>& amps, int n_qubits,
                             const GateInstance& gate, std::span<const double> weights);

}  // namespace bornforge
