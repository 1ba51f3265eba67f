#include "bornforge/losses.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "bornforge/kernels.hpp"

namespace bornforge {

namespace {

constexpr double kHalfPi = std::numbers::pi / 2.0;

void check_lengths(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("distribution length mismatch");
}

// K(x, y) depends only on |x - y|; precompute it per lag.
std::vector<double> kernel_by_lag(std::size_t n, std::span<const double> sigmas) {
    std::vector<double> k(n, 0.0);
    for (std::size_t l = 0; l < n; ++l) {
        double acc = 0.0;
        for (double s : sigmas) acc += std::exp(-static_cast<double>(l) / (2.0 * s * s));
        k[l] = acc / static_cast<double>(sigmas.size());
    }
    return k;
}

// u(y) = sum_x K(|x-y|) d(x). Parallel over y, serial inner sums.
std::vector<double> kernel_apply(std::span<const double> d, std::span<const double> lags) {
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(d.size());
    std::vector<double> u(d.size(), 0.0);
#pragma omp parallel for schedule(static) if (n >= 2048 && !omp_in_parallel())
    for (std::ptrdiff_t y = 0; y < n; ++y) {
        double acc = 0.0;
        for (std::ptrdiff_t x = 0; x < n; ++x)
            acc += lags[static_cast<std::size_t>(x > y ? x - y : y - x)] * d[static_cast<std::size_t>(x)];
        u[static_cast<std::size_t>(y)] = acc;
    }
    return u;
}

double prob_of(double a) { return a * a; }
double prob_of(const cplx& a) { return std::norm(a); }

template <class T>
std::vector<double> probs_of(const std::vector<T>& amps) {
    std::vector<double> q(amps.size());
    for (std::size_t x = 0; x < q.size(); ++x) q[x] = prob_of(amps[x]);
    return q;
}

template <class T>
double weighted_prob(const std::vector<T>& amps, std::span<const double> w) {
    double acc = 0.0;
    for (std::size_t x = 0; x < amps.size(); ++x) acc += w[x] * prob_of(amps[x]);
    return acc;
}

constexpr Mat4r kCxMatrix = {1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0};

template <class T>
void apply_cx(std::vector<T>& amps, int n_qubits, int control, int target) {
    kernels::apply_2q(amps.data(), amps.size(), n_qubits - 1 - control, n_qubits - 1 - target,
                      kCxMatrix);
}

GateKind rotation_axis_of(GateKind controlled) {
    return controlled == GateKind::CRY ? GateKind::RY : GateKind::RZ;
}

// Shifted evaluations of one controlled rotation, decomposed as
// CR(theta) = R(theta/2) . CX . R(-theta/2) . CX applied right to left.
// outer/inner are the angles of the two R occurrences.
template <class T>
void apply_controlled_decomposed(std::vector<T>& amps, int n_qubits, const GateInstance& g,
                                 double inner, double outer) {
    const GateKind axis = rotation_axis_of(g.kind);
    const GateInstance rot = make_gate(axis, g.q1, -1, -1);
    apply_cx(amps, n_qubits, g.q0, g.q1);
    apply_gate_inplace(amps, n_qubits, rot, inner);
    apply_cx(amps, n_qubits, g.q0, g.q1);
    apply_gate_inplace(amps, n_qubits, rot, outer);
}

// Applies gates [from, end) of the circuit, then returns sum_x w(x) |amp(x)|^2.
template <class T>
double weighted_suffix(std::vector<T> amps, const Circuit& c, std::span<const double> theta,
                       std::size_t from, std::span<const double> w) {
    for (std::size_t gi = from; gi < c.gates.size(); ++gi) {
        const GateInstance& g = c.gates[gi];
        apply_gate_inplace(amps, c.n_qubits, g,
                           g.slot >= 0 ? theta[static_cast<std::size_t>(g.slot)] : 0.0);
    }
    return weighted_prob(amps, w);
}

// d(sum_x w q)/d theta for the gate at index gi, with the prefix state given.
template <class T>
double gate_derivative(const std::vector<T>& prefix, const Circuit& c,
                       std::span<const double> theta, std::size_t gi,
                       std::span<const double> w) {
    const GateInstance& g = c.gates[gi];
    const double th = theta[static_cast<std::size_t>(g.slot)];
    if (has_involutory_generator(g.kind)) {
        double s[2];
        for (int b = 0; b < 2; ++b) {
            std::vector<T> amps = prefix;
            apply_gate_inplace(amps, c.n_qubits, g, th + (b == 0 ? kHalfPi : -kHalfPi));
            s[b] = weighted_suffix(std::move(amps), c, theta, gi + 1, w);
        }
        return 0.5 * (s[0] - s[1]);
    }
    // Controlled rotation: product rule over the two R(theta/2) occurrences,
    // each with the half shift rule; the inner rotation carries angle
    // -theta/2, so its branch enters with opposite sign.
    double s[4];
    const double shifts[4][2] = {
        {-th / 2.0, th / 2.0 + kHalfPi},  // outer +
        {-th / 2.0, th / 2.0 - kHalfPi},  // outer -
        {-th / 2.0 + kHalfPi, th / 2.0},  // inner +
        {-th / 2.0 - kHalfPi, th / 2.0},  // inner -
    };
    for (int b = 0; b < 4; ++b) {
        std::vector<T> amps = prefix;
        apply_controlled_decomposed(amps, c.n_qubits, g, shifts[b][0], shifts[b][1]);
        s[b] = weighted_suffix(std::move(amps), c, theta, gi + 1, w);
    }
    return 0.25 * (s[0] - s[1] - s[2] + s[3]);
}

template <class T>
double gate_gradient_at_zero_impl(const std::vector<T>& amps, int n_qubits,
                                  const GateInstance& g, std::span<const double> w) {
    if (!is_parameterized(g.kind)) return 0.0;
    if (has_involutory_generator(g.kind)) {
        double s[2];
        for (int b = 0; b < 2; ++b) {
            std::vector<T> shifted = amps;
            apply_gate_inplace(shifted, n_qubits, g, b == 0 ? kHalfPi : -kHalfPi);
            s[b] = weighted_prob(shifted, w);
        }
        return 0.5 * (s[0] - s[1]);
    }
    double s[4];
    const double shifts[4][2] = {
        {0.0, kHalfPi}, {0.0, -kHalfPi}, {kHalfPi, 0.0}, {-kHalfPi, 0.0}};
    for (int b = 0; b < 4; ++b) {
        std::vector<T> shifted = amps;
        apply_controlled_decomposed(shifted, n_qubits, g, shifts[b][0], shifts[b][1]);
        s[b] = weighted_prob(shifted, w);
    }
    return 0.25 * (s[0] - s[1] - s[2] + s[3]);
}

template <class T>
std::vector<T> initial_amps(int n_qubits) {
    std::vector<T> amps(std::size_t{1} << n_qubits, T{});
    amps[0] = T{1.0};
    return amps;
}

// Checkpoint every `stride` gates so prefix rebuilds stay short without
// holding every intermediate state (caps checkpoint memory near 64 MB).
std::size_t checkpoint_stride(std::size_t n_gates, std::size_t dim, std::size_t elem_size) {
    const std::size_t budget = std::size_t{64} << 20;
    const std::size_t max_states = std::max<std::size_t>(budget / std::max<std::size_t>(dim * elem_size, 1), 1);
    return std::max<std::size_t>((n_gates + max_states - 1) / max_states, 1);
}

template <class T>
GradientResult loss_gradient_impl(const Circuit& c, std::span<const double> theta,
                                  const TargetDistribution& target, const LossKind& kind) {
    const std::size_t n_gates = c.gates.size();
    const std::size_t stride = checkpoint_stride(n_gates, std::size_t{1} << c.n_qubits, sizeof(T));

    std::vector<std::vector<T>> checkpoints;
    checkpoints.reserve(n_gates / stride + 1);
    std::vector<T> state = initial_amps<T>(c.n_qubits);
    checkpoints.push_back(state);
    for (std::size_t gi = 0; gi < n_gates; ++gi) {
        const GateInstance& g = c.gates[gi];
        apply_gate_inplace(state, c.n_qubits, g,
                           g.slot >= 0 ? theta[static_cast<std::size_t>(g.slot)] : 0.0);
        if ((gi + 1) % stride == 0 && gi + 1 < n_gates) checkpoints.push_back(state);
    }

    const std::vector<double> q = probs_of(state);
    LossEval ev = loss_and_weights(target.p, q, kind);

    std::vector<double> per_gate(n_gates, 0.0);
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(n_gates);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t gi = 0; gi < count; ++gi) {
        const std::size_t i = static_cast<std::size_t>(gi);
        if (c.gates[i].slot < 0) continue;
        std::vector<T> prefix = checkpoints[i / stride];
        for (std::size_t t = (i / stride) * stride; t < i; ++t) {
            const GateInstance& g = c.gates[t];
            apply_gate_inplace(prefix, c.n_qubits, g,
                               g.slot >= 0 ? theta[static_cast<std::size_t>(g.slot)] : 0.0);
        }
        per_gate[i] = gate_derivative(prefix, c, theta, i, ev.weights);
    }

    GradientResult res;
    res.loss = ev.value;
    res.floor_hits = ev.floor_hits;
    res.grad.assign(c.theta.size(), 0.0);
    for (std::size_t gi = 0; gi < n_gates; ++gi)
        if (c.gates[gi].slot >= 0) res.grad[static_cast<std::size_t>(c.gates[gi].slot)] += per_gate[gi];
    return res;
}

template <class T>
std::vector<double> score_candidates_impl(const std::vector<T>& amps, int n_qubits,
                                          std::span<const PoolOperator> ops,
                                          const TargetDistribution& target,
                                          const LossKind& kind) {
    const std::vector<double> q = probs_of(amps);
    const LossEval ev = loss_and_weights(target.p, q, kind);
    std::vector<double> grads(ops.size(), 0.0);
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(ops.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t i = 0; i < count; ++i) {
        const std::size_t k = static_cast<std::size_t>(i);
        grads[k] = gate_gradient_at_zero_impl(amps, n_qubits, ops[k].instance(), ev.weights);
    }
    return grads;
}

}  // namespace

void TargetDistribution::validate() const {
    if (p.size() != (std::size_t{1} << n_qubits))
        throw std::invalid_argument("target length must be 2^n");
    double sum = 0.0;
    for (double v : p) {
        if (v < 0.0) throw std::invalid_argument("target has negative mass");
        sum += v;
    }
    if (std::abs(sum - 1.0) > 1e-10) throw std::invalid_argument("target is not normalized");
}

TargetDistribution make_target(int n_qubits, std::vector<double> p) {
    TargetDistribution t{n_qubits, std::move(p)};
    t.validate();
    return t;
}

std::vector<double> default_mmd_sigmas(int n_qubits) {
    const double scale = static_cast<double>(std::size_t{1} << n_qubits) / 8.0;
    return {0.5 * scale, 1.0 * scale, 2.0 * scale, 4.0 * scale};
}

LossKind LossKind::mmd(int n_qubits) { return {LossTag::MMD, default_mmd_sigmas(n_qubits)}; }
LossKind LossKind::log_mmd(int n_qubits) { return {LossTag::LogMMD, default_mmd_sigmas(n_qubits)}; }

void LossKind::validate() const {
    if (tag == LossTag::MMD || tag == LossTag::LogMMD) {
        if (sigmas.empty()) throw std::invalid_argument("MMD loss needs bandwidths");
        for (double s : sigmas)
            if (s <= 0.0) throw std::invalid_argument("MMD bandwidths must be positive");
    }
}

double kl_divergence(std::span<const double> p, std::span<const double> q) {
    check_lengths(p, q);
    double acc = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        if (p[x] <= 0.0) continue;
        acc += p[x] * std::log(p[x] / std::max(q[x], kQFloor));
    }
    return acc;
}

double fisher_rao(std::span<const double> p, std::span<const double> q) {
    check_lengths(p, q);
    double b = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) b += std::sqrt(p[x] * q[x]);
    return std::acos(std::clamp(b, -1.0, 1.0));
}

double mmd(std::span<const double> p, std::span<const double> q,
           std::span<const double> sigmas, bool log_form) {
    check_lengths(p, q);
    for (double s : sigmas)
        if (s <= 0.0) throw std::invalid_argument("MMD bandwidths must be positive");
    if (sigmas.empty()) throw std::invalid_argument("MMD loss needs bandwidths");
    const std::vector<double> lags = kernel_by_lag(p.size(), sigmas);
    std::vector<double> d(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) d[x] = q[x] - p[x];
    const std::vector<double> u = kernel_apply(d, lags);
    double value = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) value += d[x] * u[x];
    value = std::max(value, 0.0);  // cancellation can leave a tiny negative
    return log_form ? std::log(value + kMmdFloor) : value;
}

double loss_value(std::span<const double> p, std::span<const double> q, const LossKind& kind) {
    switch (kind.tag) {
        case LossTag::KL: return kl_divergence(p, q);
        case LossTag::FisherRao: return fisher_rao(p, q);
        case LossTag::MMD: return mmd(p, q, kind.sigmas, false);
        case LossTag::LogMMD: return mmd(p, q, kind.sigmas, true);
    }
    throw std::logic_error("bad loss tag");
}

LossEval loss_and_weights(std::span<const double> p, std::span<const double> q,
                          const LossKind& kind) {
    check_lengths(p, q);
    LossEval ev;
    ev.weights.assign(p.size(), 0.0);
    switch (kind.tag) {
        case LossTag::KL: {
            double acc = 0.0;
            for (std::size_t x = 0; x < p.size(); ++x) {
                if (p[x] <= 0.0) continue;
                if (q[x] < kQFloor) ++ev.floor_hits;
                const double qf = std::max(q[x], kQFloor);
                acc += p[x] * std::log(p[x] / qf);
                ev.weights[x] = -p[x] / qf;
            }
            ev.value = acc;
            break;
        }
        case LossTag::FisherRao: {
            double b = 0.0;
            for (std::size_t x = 0; x < p.size(); ++x) b += std::sqrt(p[x] * q[x]);
            ev.value = std::acos(std::clamp(b, -1.0, 1.0));
            if (b > 1.0 - 1e-12) break;  // gradient suppressed at the optimum
            const double denom = std::max(2.0 * std::sqrt(std::max(1.0 - b * b, 0.0)), 1e-8);
            for (std::size_t x = 0; x < p.size(); ++x) {
                if (p[x] <= 0.0) continue;
                if (q[x] < kQFloor) ++ev.floor_hits;
                ev.weights[x] = -std::sqrt(p[x] / std::max(q[x], kQFloor)) / denom;
            }
            break;
        }
        case LossTag::MMD:
        case LossTag::LogMMD: {
            if (kind.sigmas.empty()) throw std::invalid_argument("MMD loss needs bandwidths");
            const std::vector<double> lags = kernel_by_lag(p.size(), kind.sigmas);
            std::vector<double> d(p.size());
            for (std::size_t x = 0; x < p.size(); ++x) d[x] = q[x] - p[x];
            const std::vector<double> u = kernel_apply(d, lags);
            double m = 0.0;
            for (std::size_t x = 0; x < p.size(); ++x) m += d[x] * u[x];
            m = std::max(m, 0.0);
            if (kind.tag == LossTag::MMD) {
                ev.value = m;
                for (std::size_t x = 0; x < p.size(); ++x) ev.weights[x] = 2.0 * u[x];
            } else {
                ev.value = std::log(m + kMmdFloor);
                for (std::size_t x = 0; x < p.size(); ++x)
                    ev.weights[x] = 2.0 * u[x] / (m + kMmdFloor);
            }
            break;
        }
    }
    return ev;
}

GradientResult loss_gradient(const Circuit& circuit, std::span<const double> theta,
                             const TargetDistribution& target, const LossKind& kind) {
    if (theta.size() != circuit.theta.size())
        throw std::invalid_argument("theta length does not match circuit slot count");
    if (target.p.size() != (std::size_t{1} << circuit.n_qubits))
        throw std::invalid_argument("target width does not match circuit");
    if (circuit.real_valued()) return loss_gradient_impl<double>(circuit, theta, target, kind);
    return loss_gradient_impl<cplx>(circuit, theta, target, kind);
}

double candidate_gradient(const Circuit& circuit, std::span<const double> theta,
                          const PoolOperator& op, const TargetDistribution& target,
                          const LossKind& kind) {
    const GateInstance gate = op.instance();
    if (circuit.real_valued() && has_real_matrix(gate.kind)) {
        const std::vector<double> amps = run_circuit_real(circuit, theta);
        const LossEval ev = loss_and_weights(target.p, born_probabilities_real(amps), kind);
        return gate_gradient_at_zero(amps, circuit.n_qubits, gate, ev.weights);
    }
    const StateVector psi = run_circuit(circuit, theta);
    const LossEval ev = loss_and_weights(target.p, born_probabilities(psi), kind);
    return gate_gradient_at_zero(psi.amplitudes(), circuit.n_qubits, gate, ev.weights);
}

std::vector<double> score_candidates(const StateVector& psi, std::span<const PoolOperator> ops,
                                     const TargetDistribution& target, const LossKind& kind) {
    return score_candidates_impl(psi.amplitudes(), psi.n_qubits(), ops, target, kind);
}

std::vector<double> score_candidates_real(const std::vector<double>& amps, int n_qubits,
                                          std::span<const PoolOperator> ops,
                                          const TargetDistribution& target,
                                          const LossKind& kind) {
    return score_candidates_impl(amps, n_qubits, ops, target, kind);
}

double gate_gradient_at_zero(const std::vector<cplx>& amps, int n_qubits,
                             const GateInstance& gate, std::span<const double> weights) {
    return gate_gradient_at_zero_impl(amps, n_qubits, gate, weights);
}

double gate_gradient_at_zero(const std::vector<double>& amps, int n_qubits,
                             const GateInstance& gate, std::span<const double> weights) {
    return gate_gradient_at_zero_impl(amps, n_qubits, gate, weights);
}

}  // namespace bornforge
