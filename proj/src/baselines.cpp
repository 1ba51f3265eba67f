#include "bornforge/baselines.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace bornforge {

namespace {

void check_width(int n_qubits, int k) {
    if (n_qubits < 2) throw std::invalid_argument("baseline ansatz needs at least two qubits");
    if (k < 0) throw std::invalid_argument("negative circuit depth");
}

void rotation_layer_rxryrx(Circuit& c) {
    for (int qb = 0; qb < c.n_qubits; ++qb) {
        c.push_parameterized(GateKind::RX, qb, -1, 0.0);
        c.push_parameterized(GateKind::RY, qb, -1, 0.0);
        c.push_parameterized(GateKind::RX, qb, -1, 0.0);
    }
}

double l2_norm(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

}  // namespace

Circuit build_structure1(int n_qubits, int k) {
    check_width(n_qubits, k);
    Circuit c;
    c.n_qubits = n_qubits;
    rotation_layer_rxryrx(c);
    for (int layer = 0; layer < k; ++layer) {
        for (int qb = 0; qb < n_qubits; ++qb)
            c.push_fixed(GateKind::CZ, qb, (qb + 1) % n_qubits);
        rotation_layer_rxryrx(c);
    }
    return c;
}

Circuit build_structure2(int n_qubits, int k) {
    check_width(n_qubits, k);
    Circuit c;
    c.n_qubits = n_qubits;
    for (int layer = 0; layer < k; ++layer) {
        for (int qb = 0; qb < n_qubits; ++qb)
            c.push_parameterized(GateKind::RY, qb, -1, 0.0);
        for (int qb = 0; qb < n_qubits; ++qb)
            c.push_parameterized(GateKind::CRZ, qb, (qb + 1) % n_qubits, 0.0);
    }
    return c;
}

Circuit build_mps_circuit(int n_qubits, int k) {
    check_width(n_qubits, k);
    // Lexicographic over (a, b) in {X, Y, Z, I}^2 minus II.
    static constexpr GateKind kBlockKinds[15] = {
        GateKind::XX, GateKind::XY, GateKind::XZ, GateKind::XI, GateKind::YX,
        GateKind::YY, GateKind::YZ, GateKind::YI, GateKind::ZX, GateKind::ZY,
        GateKind::ZZ, GateKind::ZI, GateKind::IX, GateKind::IY, GateKind::IZ,
    };
    Circuit c;
    c.n_qubits = n_qubits;
    for (int sweep = 0; sweep < k; ++sweep)
        for (int qb = 0; qb + 1 < n_qubits; ++qb)
            for (GateKind kind : kBlockKinds)
                c.push_parameterized(kind, qb, qb + 1, 0.0);
    return c;
}

Circuit build_fixed_ansatz(const FixedAnsatzSpec& spec) {
    Circuit c;
    switch (spec.family) {
        case AnsatzFamily::Structure1: c = build_structure1(spec.n_qubits, spec.depth); break;
        case AnsatzFamily::Structure2: c = build_structure2(spec.n_qubits, spec.depth); break;
        case AnsatzFamily::MPS: c = build_mps_circuit(spec.n_qubits, spec.depth); break;
    }
    c.theta = gaussian_init(c.theta.size(), spec.seed);
    return c;
}

std::vector<double> gaussian_init(std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> dist(0.0, std::numbers::pi / 8.0);
    std::vector<double> out(count);
    for (double& v : out) v = dist(rng);
    return out;
}

TrainResult train_fixed(const Circuit& circuit, const TargetDistribution& target,
                        const FixedTrainConfig& config) {
    target.validate();
    config.loss.validate();
    if (target.p.size() != (std::size_t{1} << circuit.n_qubits))
        throw std::invalid_argument("target width does not match circuit");

    TrainResult result;
    result.circuit = circuit;
    Circuit& c = result.circuit;
    TrainReport& report = result.report;

    OptimizerState opt;
    opt.resize(c.theta.size());
    std::uint64_t measurements = 0;
    const std::size_t n_params = c.theta.size();

    for (int epoch = 1; epoch <= config.max_epochs; ++epoch) {
        GradientResult gr = loss_gradient(c, c.theta, target, config.loss);
        measurements += 2 * static_cast<std::uint64_t>(n_params);
        report.floor_hits += gr.floor_hits;
        const double gnorm = l2_norm(gr.grad);
        const double lr =
            config.adaptive_lr
                ? adaptive_learning_rate(gr.grad, static_cast<int>(n_params), config.alpha)
                : config.lr;
        report.epochs.push_back({1, epoch, gr.loss, gnorm, lr, c.n_params(), measurements});
        if (gnorm < config.eps2) {
            report.converged = true;
            break;
        }
        adam_update(c.theta, gr.grad, lr, opt, config.adam);
    }

    const std::vector<double> q = born_probabilities(run_circuit(c, c.theta));
    report.total_measurements = measurements;
    report.final_loss = loss_value(target.p, q, config.loss);
    report.final_kl = kl_divergence(target.p, q);
    report.final_fisher_rao = fisher_rao(target.p, q);
    report.resources = count_resources(c);
    return result;
}

}  // namespace bornforge
