#include "oracles.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace bornforge::oracles {

namespace {

Eigen::MatrixXcd to_eigen_1q(const Mat2& m) {
    Eigen::Matrix2cd out;
    out << m[0], m[1], m[2], m[3];
    return out;
}

Eigen::MatrixXcd to_eigen_2q(const Mat4& m) {
    Eigen::Matrix4cd out;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out(r, c) = m[static_cast<std::size_t>(r) * 4 + c];
    return out;
}

}  // namespace

Eigen::MatrixXcd dense_gate_matrix(const GateInstance& gate, double theta, int n_qubits) {
    // Elementwise embedding: entry (x', x) is U(r', r) when all untouched bits
    // agree and zero otherwise, with r collecting the gate's qubit bits.
    const std::size_t dim = std::size_t{1} << n_qubits;
    const auto bit = [n_qubits](std::size_t x, int q) { return (x >> (n_qubits - 1 - q)) & 1; };
    Eigen::MatrixXcd full = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(dim),
                                                   static_cast<Eigen::Index>(dim));
    if (!is_two_qubit(gate.kind)) {
        const Eigen::MatrixXcd u = to_eigen_1q(gate_matrix_1q(gate.kind, theta));
        const std::size_t mask = std::size_t{1} << (n_qubits - 1 - gate.q0);
        for (std::size_t col = 0; col < dim; ++col)
            for (std::size_t row = 0; row < dim; ++row)
                if ((row & ~mask) == (col & ~mask))
                    full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                        u(static_cast<Eigen::Index>(bit(row, gate.q0)),
                          static_cast<Eigen::Index>(bit(col, gate.q0)));
        return full;
    }
    const Eigen::MatrixXcd u = to_eigen_2q(gate_matrix_2q(gate.kind, theta));
    const std::size_t mask = (std::size_t{1} << (n_qubits - 1 - gate.q0)) |
                             (std::size_t{1} << (n_qubits - 1 - gate.q1));
    for (std::size_t col = 0; col < dim; ++col)
        for (std::size_t row = 0; row < dim; ++row)
            if ((row & ~mask) == (col & ~mask))
                full(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
                    u(static_cast<Eigen::Index>(2 * bit(row, gate.q0) + bit(row, gate.q1)),
                      static_cast<Eigen::Index>(2 * bit(col, gate.q0) + bit(col, gate.q1)));
    return full;
}

Eigen::MatrixXcd dense_circuit_matrix(const Circuit& circuit, std::span<const double> theta) {
    const Eigen::Index dim = Eigen::Index{1} << circuit.n_qubits;
    Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dim, dim);
    for (const GateInstance& g : circuit.gates) {
        const double th = g.slot >= 0 ? theta[static_cast<std::size_t>(g.slot)] : 0.0;
        u = dense_gate_matrix(g, th, circuit.n_qubits) * u;
    }
    return u;
}

Eigen::VectorXcd dense_run_circuit(const Circuit& circuit, std::span<const double> theta) {
    const Eigen::MatrixXcd u = dense_circuit_matrix(circuit, theta);
    Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(u.rows());
    psi[0] = 1.0;
    return u * psi;
}

std::vector<double> finite_difference_gradient(const Circuit& circuit,
                                               std::span<const double> theta,
                                               const TargetDistribution& target,
                                               const LossKind& kind, double step) {
    std::vector<double> grad(theta.size(), 0.0);
    std::vector<double> shifted(theta.begin(), theta.end());
    for (std::size_t k = 0; k < theta.size(); ++k) {
        shifted[k] = theta[k] + step;
        const double up =
            loss_value(target.p, born_probabilities(run_circuit(circuit, shifted)), kind);
        shifted[k] = theta[k] - step;
        const double down =
            loss_value(target.p, born_probabilities(run_circuit(circuit, shifted)), kind);
        shifted[k] = theta[k];
        grad[k] = (up - down) / (2.0 * step);
    }
    return grad;
}

Eigen::Matrix4cd partial_trace_oracle(const StateVector& state, int qi, int qj) {
    const int n = state.n_qubits();
    const std::size_t dim = state.dim();
    const auto bit = [n](std::size_t x, int q) { return (x >> (n - 1 - q)) & 1; };
    Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
    const auto& amp = state.amplitudes();
    for (std::size_t x = 0; x < dim; ++x) {
        for (std::size_t y = 0; y < dim; ++y) {
            // keep terms whose traced-out bits agree
            const std::size_t keep_mask = (std::size_t{1} << (n - 1 - qi)) |
                                          (std::size_t{1} << (n - 1 - qj));
            if ((x & ~keep_mask) != (y & ~keep_mask)) continue;
            const int r = static_cast<int>(2 * bit(x, qi) + bit(x, qj));
            const int c = static_cast<int>(2 * bit(y, qi) + bit(y, qj));
            rho(r, c) += amp[x] * std::conj(amp[y]);
        }
    }
    return rho;
}

std::vector<double> jacobi_hermitian_eigenvalues(const Eigen::MatrixXcd& m) {
    const Eigen::Index d = m.rows();
    // Real symmetric embedding: eigenvalues of H appear twice.
    Eigen::MatrixXd s(2 * d, 2 * d);
    s.topLeftCorner(d, d) = m.real();
    s.topRightCorner(d, d) = -m.imag();
    s.bottomLeftCorner(d, d) = m.imag();
    s.bottomRightCorner(d, d) = m.real();

    const Eigen::Index n = 2 * d;
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (Eigen::Index p = 0; p < n; ++p)
            for (Eigen::Index q = p + 1; q < n; ++q) off += s(p, q) * s(p, q);
        if (off < 1e-26) break;
        for (Eigen::Index p = 0; p < n; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                if (std::abs(s(p, q)) < 1e-18) continue;
                const double phi = 0.5 * std::atan2(2.0 * s(p, q), s(q, q) - s(p, p));
                const double c = std::cos(phi);
                const double sn = std::sin(phi);
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double skp = s(k, p);
                    const double skq = s(k, q);
                    s(k, p) = c * skp - sn * skq;
                    s(k, q) = sn * skp + c * skq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double spk = s(p, k);
                    const double sqk = s(q, k);
                    s(p, k) = c * spk - sn * sqk;
                    s(q, k) = sn * spk + c * sqk;
                }
            }
        }
    }
    std::vector<double> eig(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) eig[static_cast<std::size_t>(k)] = s(k, k);
    std::sort(eig.begin(), eig.end());
    // Deduplicate the doubled spectrum.
    std::vector<double> out;
    for (std::size_t k = 0; k < eig.size(); k += 2) out.push_back(0.5 * (eig[k] + eig[k + 1]));
    return out;
}

Eigen::MatrixXcd expm_i_hermitian(const Eigen::MatrixXcd& h, double t) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
    const Eigen::VectorXd ev = solver.eigenvalues();
    Eigen::VectorXcd phases(ev.size());
    for (Eigen::Index k = 0; k < ev.size(); ++k)
        phases[k] = std::exp(cplx(0.0, ev[k] * t));
    return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

double spectral_norm(const Eigen::MatrixXcd& m) {
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
    return svd.singularValues()[0];
}

double mmd_double_sum(std::span<const double> p, std::span<const double> q,
                      std::span<const double> sigmas) {
    const auto kernel = [&](std::size_t x, std::size_t y) {
        const double dist = x > y ? static_cast<double>(x - y) : static_cast<double>(y - x);
        double acc = 0.0;
        for (double s : sigmas) acc += std::exp(-dist / (2.0 * s * s));
        return acc / static_cast<double>(sigmas.size());
    };
    double epp = 0.0;
    double epq = 0.0;
    double eqq = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) {
        for (std::size_t y = 0; y < p.size(); ++y) {
            const double k = kernel(x, y);
            epp += p[x] * p[y] * k;
            epq += p[x] * q[y] * k;
            eqq += q[x] * q[y] * k;
        }
    }
    return epp - 2.0 * epq + eqq;
}

double kl_direct_sum(std::span<const double> p, std::span<const double> q) {
    double acc = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x)
        if (p[x] > 0.0) acc += p[x] * (std::log(p[x]) - std::log(std::max(q[x], 1e-12)));
    return acc;
}

std::vector<double> random_distribution(std::size_t dim, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::vector<double> p(dim);
    double sum = 0.0;
    for (double& v : p) {
        v = uni(rng);
        sum += v;
    }
    for (double& v : p) v /= sum;
    return p;
}

StateVector random_state(int n_qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> amps(std::size_t{1} << n_qubits);
    double norm_sq = 0.0;
    for (cplx& a : amps) {
        a = cplx(gauss(rng), gauss(rng));
        norm_sq += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (cplx& a : amps) a *= scale;
    return StateVector(n_qubits, std::move(amps));
}

StateVector random_real_state(int n_qubits, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<cplx> amps(std::size_t{1} << n_qubits);
    double norm_sq = 0.0;
    for (cplx& a : amps) {
        a = cplx(gauss(rng), 0.0);
        norm_sq += std::norm(a);
    }
    const double scale = 1.0 / std::sqrt(norm_sq);
    for (cplx& a : amps) a *= scale;
    return StateVector(n_qubits, std::move(amps));
}

Circuit random_circuit(int n_qubits, int depth, std::span<const GateKind> kinds,
                       std::mt19937_64& rng) {
    std::uniform_int_distribution<std::size_t> pick_kind(0, kinds.size() - 1);
    std::uniform_int_distribution<int> pick_qubit(0, n_qubits - 1);
    std::uniform_real_distribution<double> pick_angle(-std::numbers::pi, std::numbers::pi);
    Circuit c;
    c.n_qubits = n_qubits;
    for (int g = 0; g < depth; ++g) {
        const GateKind kind = kinds[pick_kind(rng)];
        const int q0 = pick_qubit(rng);
        int q1 = -1;
        if (is_two_qubit(kind)) {
            q1 = pick_qubit(rng);
            while (q1 == q0) q1 = pick_qubit(rng);
        }
        if (is_parameterized(kind))
            c.push_parameterized(kind, q0, q1, pick_angle(rng));
        else
            c.push_fixed(kind, q0, q1);
    }
    return c;
}

}  // namespace bornforge::oracles
