#pragma once

#include <Eigen/Dense>
#include <span>
#include <variant>
#include <vector>

#include "bornforge/losses.hpp"

namespace bornforge {

/// Total variation distance (1/2) sum |p - q|.
double tv_distance(std::span<const double> p, std::span<const double> q);

/// Pinsker bound sqrt(KL(p || q) / 2) >= tv_distance(p, q).
double pinsker_bound(std::span<const double> p, std::span<const double> q);

/// Spectral-norm error of time evolution driven through an approximate
/// coefficient loader: || e^{iHt} - e^{iH' alpha t} || <= sqrt(2 delta) alpha t
/// for KL error delta and LCU 1-norm alpha.
double ham_sim_error_bound(double delta, double alpha, double t);

/// Inverse of the bound: the KL error needed for an epsilon-accurate
/// evolution, epsilon^2 / (2 alpha^2 t^2).
double required_kl(double epsilon, double alpha, double t);

/// |E_p f - E_q f| <= sqrt(2 delta) ||f||_2 for KL(p || q) <= delta.
double expectation_error_bound(double delta, std::span<const double> f);

/// H = sum alpha_j V_j at verification scale (small dense unitaries).
struct LcuSpec {
    std::vector<double> coefficients;
    std::vector<Eigen::MatrixXcd> unitaries;

    double one_norm() const;  // alpha = sum |alpha_j|
    std::vector<double> distribution() const;  // |alpha_j| / alpha
    /// sum c_j V_j over the given (possibly perturbed) coefficients, with the
    /// signs of the original alphas absorbed into the unitaries.
    Eigen::MatrixXcd hamiltonian(std::span<const double> coeffs) const;
    Eigen::MatrixXcd hamiltonian() const;
    void validate() const;  // |alpha| > 0, each unitary has spectral norm 1
};

struct EuropeanCall {
    double strike = 0.0;
};

/// Payoff on the discretized asset grid, rescaled into [0, 1] by its maximum
/// (tabulated payoffs must already lie in [0, 1]).
struct PayoffSpec {
    std::variant<EuropeanCall, std::vector<double>> payoff;
    std::vector<double> asset_grid;  // basis index -> asset value

    std::vector<double> payoff_vector() const;
};

struct PricingReport {
    double expectation_target = 0.0;
    double expectation_model = 0.0;
    double difference = 0.0;
    double kl = 0.0;
    double bound = 0.0;
    bool vacuous = false;  // sqrt(2 delta) >= 2, beyond the TV maximum
};

/// Classical expectation of the payoff under target and model distributions
/// with the KL-driven error bound; equals what an exact-amplitude estimation
/// of the ancilla would report.
PricingReport pricing_demo(std::span<const double> model_q, const PayoffSpec& spec,
                           const TargetDistribution& target);

}  // namespace bornforge
