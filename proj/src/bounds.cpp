#include "bornforge/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bornforge {

double tv_distance(std::span<const double> p, std::span<const double> q) {
    if (p.size() != q.size()) throw std::invalid_argument("distribution length mismatch");
    double s = 0.0;
    for (std::size_t x = 0; x < p.size(); ++x) s += std::abs(p[x] - q[x]);
    return 0.5 * s;
}

double pinsker_bound(std::span<const double> p, std::span<const double> q) {
    return std::sqrt(0.5 * kl_divergence(p, q));
}

double ham_sim_error_bound(double delta, double alpha, double t) {
    if (delta < 0.0 || alpha < 0.0 || t < 0.0)
        throw std::invalid_argument("bound arguments must be nonnegative");
    return std::sqrt(2.0 * delta) * alpha * t;
}

double required_kl(double epsilon, double alpha, double t) {
    if (epsilon < 0.0) throw std::invalid_argument("bound arguments must be nonnegative");
    if (alpha <= 0.0 || t <= 0.0)
        throw std::invalid_argument("alpha and t must be positive to invert the bound");
    return epsilon * epsilon / (2.0 * alpha * alpha * t * t);
}

double expectation_error_bound(double delta, std::span<const double> f) {
    if (delta < 0.0) throw std::invalid_argument("bound arguments must be nonnegative");
    double norm_sq = 0.0;
    for (double v : f) norm_sq += v * v;
    return std::sqrt(2.0 * delta) * std::sqrt(norm_sq);
}

double LcuSpec::one_norm() const {
    double s = 0.0;
    for (double a : coefficients) s += std::abs(a);
    return s;
}

std::vector<double> LcuSpec::distribution() const {
    const double alpha = one_norm();
    if (!(alpha > 0.0)) throw std::invalid_argument("all-zero LCU coefficients");
    std::vector<double> p(coefficients.size());
    for (std::size_t j = 0; j < p.size(); ++j) p[j] = std::abs(coefficients[j]) / alpha;
    return p;
}

Eigen::MatrixXcd LcuSpec::hamiltonian(std::span<const double> coeffs) const {
    if (coeffs.size() != unitaries.size())
        throw std::invalid_argument("coefficient count does not match unitary count");
    if (unitaries.empty()) throw std::invalid_argument("empty LCU");
    Eigen::MatrixXcd h = Eigen::MatrixXcd::Zero(unitaries[0].rows(), unitaries[0].cols());
    for (std::size_t j = 0; j < unitaries.size(); ++j) {
        const double sign = coefficients[j] < 0.0 ? -1.0 : 1.0;
        h += coeffs[j] * sign * unitaries[j];
    }
    return h;
}

Eigen::MatrixXcd LcuSpec::hamiltonian() const {
    std::vector<double> mags(coefficients.size());
    for (std::size_t j = 0; j < mags.size(); ++j) mags[j] = std::abs(coefficients[j]);
    return hamiltonian(mags);
}

void LcuSpec::validate() const {
    if (coefficients.size() != unitaries.size())
        throw std::invalid_argument("coefficient count does not match unitary count");
    if (!(one_norm() > 0.0)) throw std::invalid_argument("all-zero LCU coefficients");
    for (const Eigen::MatrixXcd& v : unitaries) {
        if (v.rows() != v.cols()) throw std::invalid_argument("unitaries must be square");
        Eigen::MatrixXcd gram = v.adjoint() * v;
        gram -= Eigen::MatrixXcd::Identity(v.rows(), v.cols());
        if (gram.cwiseAbs().maxCoeff() > 1e-10)
            throw std::invalid_argument("LCU term is not unitary");
    }
}

std::vector<double> PayoffSpec::payoff_vector() const {
    if (const auto* call = std::get_if<EuropeanCall>(&payoff)) {
        if (!(call->strike > 0.0)) throw std::invalid_argument("strike must be positive");
        if (asset_grid.empty()) throw std::invalid_argument("empty asset grid");
        std::vector<double> f(asset_grid.size());
        double peak = 0.0;
        for (std::size_t x = 0; x < f.size(); ++x) {
            f[x] = std::max(0.0, asset_grid[x] - call->strike);
            peak = std::max(peak, f[x]);
        }
        if (peak > 0.0)
            for (double& v : f) v /= peak;
        return f;
    }
    const auto& f = std::get<std::vector<double>>(payoff);
    for (double v : f)
        if (v < 0.0 || v > 1.0)
            throw std::invalid_argument("tabulated payoff must lie in [0, 1]");
    return f;
}

PricingReport pricing_demo(std::span<const double> model_q, const PayoffSpec& spec,
                           const TargetDistribution& target) {
    const std::vector<double> f = spec.payoff_vector();
    if (f.size() != target.p.size() || model_q.size() != target.p.size())
        throw std::invalid_argument("payoff grid does not match the distributions");
    PricingReport rep;
    for (std::size_t x = 0; x < f.size(); ++x) {
        rep.expectation_target += target.p[x] * f[x];
        rep.expectation_model += model_q[x] * f[x];
    }
    rep.difference = std::abs(rep.expectation_target - rep.expectation_model);
    rep.kl = kl_divergence(target.p, model_q);
    rep.bound = expectation_error_bound(rep.kl, f);
    rep.vacuous = std::sqrt(2.0 * rep.kl) >= 2.0;
    if (rep.difference > rep.bound + 1e-12)
        throw std::runtime_error("expectation difference exceeds its bound");
    return rep;
}

}  // namespace bornforge
