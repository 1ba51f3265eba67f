#include "bornforge/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bornforge {

namespace {

constexpr double kEigTol = 1e-12;

double entropy_from_eigenvalues(const Eigen::VectorXd& ev, double log_base) {
    double s = 0.0;
    for (Eigen::Index i = 0; i < ev.size(); ++i)
        if (ev[i] > kEigTol) s -= ev[i] * std::log(ev[i]);
    return s / std::log(log_base);
}

Eigen::Matrix2cd trace_out_second(const DensityMatrix4& rho) {
    Eigen::Matrix2cd out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out(a, b) = rho(2 * a, 2 * b) + rho(2 * a + 1, 2 * b + 1);
    return out;
}

Eigen::Matrix2cd trace_out_first(const DensityMatrix4& rho) {
    Eigen::Matrix2cd out;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) out(a, b) = rho(a, b) + rho(a + 2, b + 2);
    return out;
}

double binary_entropy(double x) {
    double s = 0.0;
    if (x > 0.0) s -= x * std::log2(x);
    if (x < 1.0) s -= (1.0 - x) * std::log2(1.0 - x);
    return s;
}

template <class Fn>
CorrelationMatrix pairwise_matrix(const StateVector& state, CorrelationMetric metric, Fn&& fn) {
    const int n = state.n_qubits();
    if (n < 2) throw std::invalid_argument("need at least two qubits");
    CorrelationMatrix out;
    out.n_qubits = n;
    out.metric = metric;
    out.values.assign(static_cast<std::size_t>(n) * n, 0.0);

    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
    const std::ptrdiff_t count = static_cast<std::ptrdiff_t>(pairs.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t k = 0; k < count; ++k) {
        const auto [i, j] = pairs[static_cast<std::size_t>(k)];
        const double v = fn(reduced_density_2q(state, i, j));
        out.at(i, j) = v;
        out.at(j, i) = v;
    }
    return out;
}

}  // namespace

double CorrelationMatrix::max_off_diagonal() const {
    double m = 0.0;
    for (int i = 0; i < n_qubits; ++i)
        for (int j = 0; j < n_qubits; ++j)
            if (i != j) m = std::max(m, at(i, j));
    return m;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho, double log_base) {
    if (rho.rows() != rho.cols()) throw std::invalid_argument("density matrix must be square");
    if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-8)
        throw std::invalid_argument("density matrix is not Hermitian");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
    return entropy_from_eigenvalues(solver.eigenvalues(), log_base);
}

CorrelationMatrix mutual_information_matrix(const StateVector& state) {
    return pairwise_matrix(state, CorrelationMetric::QMI, [](const DensityMatrix4& rho) {
        const double s_ab = von_neumann_entropy(rho, 2.0);
        const double s_a = von_neumann_entropy(trace_out_second(rho), 2.0);
        const double s_b = von_neumann_entropy(trace_out_first(rho), 2.0);
        return s_a + s_b - s_ab;
    });
}

double concurrence(const DensityMatrix4& rho) {
    Eigen::SelfAdjointEigenSolver<DensityMatrix4> check(rho, Eigen::EigenvaluesOnly);
    if (check.eigenvalues().minCoeff() < -1e-8)
        throw std::invalid_argument("density matrix is not positive semidefinite");

    // Spin flip (sigma_y x sigma_y) rho* (sigma_y x sigma_y); working in the
    // computational basis the double sigma_y is antidiagonal(-1, 1, 1, -1).
    DensityMatrix4 yy = DensityMatrix4::Zero();
    yy(0, 3) = -1.0;
    yy(1, 2) = 1.0;
    yy(2, 1) = 1.0;
    yy(3, 0) = -1.0;
    const DensityMatrix4 rho_tilde = yy * rho.conjugate() * yy;

    Eigen::ComplexEigenSolver<DensityMatrix4> solver(rho * rho_tilde, false);
    std::array<double, 4> lambda{};
    for (int i = 0; i < 4; ++i)
        lambda[static_cast<std::size_t>(i)] =
            std::sqrt(std::max(solver.eigenvalues()[i].real(), 0.0));
    std::sort(lambda.begin(), lambda.end(), std::greater<>());
    return std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
}

double entanglement_of_formation(const DensityMatrix4& rho) {
    const double c = std::clamp(concurrence(rho), 0.0, 1.0);
    return binary_entropy((1.0 + std::sqrt(std::max(1.0 - c * c, 0.0))) / 2.0);
}

CorrelationMatrix eof_matrix(const StateVector& state) {
    return pairwise_matrix(state, CorrelationMetric::Eof, [](const DensityMatrix4& rho) {
        return entanglement_of_formation(rho);
    });
}

StateVector amplitude_state(std::span<const double> p) {
    int n = 0;
    while ((std::size_t{1} << n) < p.size()) ++n;
    if ((std::size_t{1} << n) != p.size())
        throw std::invalid_argument("distribution length must be 2^n");
    std::vector<cplx> amps(p.size());
    for (std::size_t x = 0; x < p.size(); ++x) amps[x] = std::sqrt(std::max(p[x], 0.0));
    return StateVector(n, std::move(amps));
}

}  // namespace bornforge
