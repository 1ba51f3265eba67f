#include "bornforge/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <random>
#include <stdexcept>

namespace bornforge {

namespace {

double l2_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

std::vector<GateInstance> pool_instances(const OperatorPool& pool) {
    std::vector<GateInstance> out;
    out.reserve(pool.size());
    for (const PoolOperator& op : pool.operators) out.push_back(op.instance());
    return out;
}

}  // namespace

void TrainConfig::validate() const {
    if (n_ops < 1) throw std::invalid_argument("n_ops must be at least 1");
    if (eps1 <= 0.0 || eps2 <= 0.0) throw std::invalid_argument("thresholds must be positive");
    if (alpha <= 0.0) throw std::invalid_argument("alpha must be positive");
    if (max_iterations < 0 || max_epochs < 1) throw std::invalid_argument("bad loop caps");
    loss.validate();
}

void OptimizerState::resize(std::size_t n) {
    m.resize(n, 0.0);
    v.resize(n, 0.0);
}

Circuit init_ansatz(int n_qubits) {
    if (n_qubits < 1) throw std::invalid_argument("need at least one qubit");
    Circuit c;
    c.n_qubits = n_qubits;
    for (int qb = 0; qb < n_qubits; ++qb)
        c.push_parameterized(GateKind::RY, qb, -1, std::numbers::pi / 2.0);
    return c;
}

std::vector<int> select_top_operators(std::span<const double> gradients, int n_ops) {
    if (gradients.empty()) throw std::invalid_argument("no candidate gradients");
    if (n_ops > static_cast<int>(gradients.size()))
        throw std::invalid_argument("n_ops exceeds candidate count");
    std::vector<int> idx(gradients.size());
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
        return std::abs(gradients[static_cast<std::size_t>(a)]) >
               std::abs(gradients[static_cast<std::size_t>(b)]);
    });
    idx.resize(static_cast<std::size_t>(n_ops));
    return idx;
}

double adaptive_learning_rate(std::span<const double> g, int n_ops, double alpha) {
    return std::max(alpha * l2_norm(g) / std::sqrt(static_cast<double>(n_ops)), 1e-6);
}

void adam_update(std::vector<double>& theta, std::span<const double> grads, double lr,
                 OptimizerState& state, const AdamParams& params) {
    if (theta.size() != grads.size() || state.m.size() != theta.size() ||
        state.v.size() != theta.size())
        throw std::invalid_argument("optimizer shape mismatch");
    state.t += 1;
    const double bc1 = 1.0 - std::pow(params.beta1, static_cast<double>(state.t));
    const double bc2 = 1.0 - std::pow(params.beta2, static_cast<double>(state.t));
    for (std::size_t k = 0; k < theta.size(); ++k) {
        state.m[k] = params.beta1 * state.m[k] + (1.0 - params.beta1) * grads[k];
        state.v[k] = params.beta2 * state.v[k] + (1.0 - params.beta2) * grads[k] * grads[k];
        const double mhat = state.m[k] / bc1;
        const double vhat = state.v[k] / bc2;
        theta[k] -= lr * mhat / (std::sqrt(vhat) + params.eps);
    }
}

ResourceCounts count_resources(const Circuit& circuit) {
    ResourceCounts rc;
    rc.parameters = circuit.n_params();
    std::vector<int> layer(static_cast<std::size_t>(circuit.n_qubits), 0);
    for (const GateInstance& g : circuit.gates) {
        const GateCost cost = gate_cost(g.kind);
        rc.one_qubit_gates += cost.one_qubit;
        rc.two_qubit_gates += cost.two_qubit;
        // Greedy layering: the gate starts after the busiest of its qubits
        // and occupies depth_span consecutive layers on all of them.
        int start = layer[g.q0];
        if (is_two_qubit(g.kind)) start = std::max(start, layer[g.q1]);
        const int end = start + cost.depth_span;
        layer[g.q0] = end;
        if (is_two_qubit(g.kind)) layer[g.q1] = end;
    }
    rc.depth = layer.empty() ? 0 : *std::max_element(layer.begin(), layer.end());
    return rc;
}

TrainResult train_aclbm(const TargetDistribution& target, const OperatorPool& pool,
                        const TrainConfig& config) {
    config.validate();
    target.validate();
    if (pool.n_qubits != target.n_qubits)
        throw std::invalid_argument("pool and target widths differ");
    if (pool.operators.empty()) throw std::invalid_argument("empty operator pool");

    const int n = target.n_qubits;
    const std::vector<GateInstance> candidates = pool_instances(pool);
    std::mt19937_64 rng(config.seed);

    TrainResult result;
    result.circuit = init_ansatz(n);
    Circuit& circuit = result.circuit;
    TrainReport& report = result.report;

    OptimizerState opt;
    opt.resize(circuit.theta.size());

    std::uint64_t measurements = 0;

    for (int iter = 1; iter <= config.max_iterations; ++iter) {
        const std::vector<double> amps = run_circuit_real(circuit, circuit.theta);
        std::vector<double> pool_grads =
            score_candidates_real(amps, n, pool.operators, target, config.loss);
        measurements += 2 * static_cast<std::uint64_t>(pool.size());
        ++report.pool_scorings;

        double gmax = 0.0;
        for (double g : pool_grads) gmax = std::max(gmax, std::abs(g));
        if (gmax < config.eps1) {
            report.converged = true;
            break;
        }

        const int n_append = std::min<int>(config.n_ops, static_cast<int>(pool.size()));
        std::vector<int> selected = select_top_operators(pool_grads, n_append);
        if (config.append_order == AppendOrder::Randomized)
            std::shuffle(selected.begin(), selected.end(), rng);

        IterationRecord irec;
        irec.iteration = iter;
        irec.max_pool_gradient = gmax;
        irec.selected = selected;
        for (int idx : selected)
            irec.selected_gradients.push_back(pool_grads[static_cast<std::size_t>(idx)]);

        for (int idx : selected) {
            const GateInstance& g = candidates[static_cast<std::size_t>(idx)];
            circuit.push_parameterized(g.kind, g.q0, is_two_qubit(g.kind) ? g.q1 : -1, 0.0);
        }
        opt.resize(circuit.theta.size());

        for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
            GradientResult gr = loss_gradient(circuit, circuit.theta, target, config.loss);
            measurements += 2 * static_cast<std::uint64_t>(circuit.theta.size());
            report.floor_hits += gr.floor_hits;
            const double gnorm = l2_norm(gr.grad);
            const double lr = adaptive_learning_rate(gr.grad, config.n_ops, config.alpha);
            report.epochs.push_back(
                {iter, epoch, gr.loss, gnorm, lr, circuit.n_params(), measurements});
            irec.epochs_run = epoch;
            if (gnorm < config.eps2) break;
            adam_update(circuit.theta, gr.grad, lr, opt, config.adam);
        }
        report.iterations.push_back(irec);
    }

    const std::vector<double> q =
        born_probabilities_real(run_circuit_real(circuit, circuit.theta));
    report.total_measurements = measurements;
    report.final_loss = loss_value(target.p, q, config.loss);
    report.final_kl = kl_divergence(target.p, q);
    report.final_fisher_rao = fisher_rao(target.p, q);
    report.resources = count_resources(circuit);
    return result;
}

}  // namespace bornforge
