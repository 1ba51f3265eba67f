#include <doctest.h>

#include <cmath>
#include <random>

#include "bornforge/baselines.hpp"
#include "bornforge/data.hpp"
#include "support/oracles.hpp"

using namespace bornforge;

TEST_CASE("structure 1 parameter counts") {
    CHECK(build_structure1(10, 10).n_params() == 330);
    CHECK(build_structure1(4, 1).n_params() == 24);
    CHECK(build_structure1(4, 0).n_params() == 12);  // single rotation layer
    // ring of fixed CZ entanglers
    const Circuit c = build_structure1(4, 2);
    int cz = 0;
    for (const GateInstance& g : c.gates)
        if (g.kind == GateKind::CZ) ++cz;
    CHECK(cz == 8);
}

TEST_CASE("structure 2 parameter counts") {
    CHECK(build_structure2(10, 5).n_params() == 100);
    CHECK(build_structure2(16, 20).n_params() == 640);
    CHECK(build_structure2(2, 1).n_params() == 4);
}

TEST_CASE("mps circuit structure") {
    CHECK(build_mps_circuit(10, 2).n_params() == 270);
    CHECK(build_mps_circuit(16, 3).n_params() == 675);

    // all-zero parameters make each block the identity
    const Circuit c = build_mps_circuit(3, 1);
    const StateVector s = run_circuit(c, std::vector<double>(c.theta.size(), 0.0));
    CHECK(std::abs(s.amplitudes()[0] - cplx(1.0)) < 1e-14);
}

TEST_CASE("fixed ansatz gaussian init is seeded") {
    FixedAnsatzSpec spec{AnsatzFamily::Structure2, 4, 2, 42};
    const Circuit a = build_fixed_ansatz(spec);
    const Circuit b = build_fixed_ansatz(spec);
    CHECK(a.theta == b.theta);
    spec.seed = 43;
    CHECK(build_fixed_ansatz(spec).theta != a.theta);

    double spread = 0.0;
    for (double th : a.theta) spread = std::max(spread, std::abs(th));
    CHECK(spread > 0.0);
    CHECK(spread < 4.0 * std::numbers::pi / 8.0);
}

TEST_CASE("baseline gate gradients match finite differences") {
    std::mt19937_64 rng(127);
    const std::array<GateKind, 5> kinds = {GateKind::RX, GateKind::RZ, GateKind::CRZ,
                                           GateKind::CZ, GateKind::RY};
    for (int trial = 0; trial < 5; ++trial) {
        const Circuit c = oracles::random_circuit(3, 10, kinds, rng);
        const TargetDistribution target{3, oracles::random_distribution(8, rng)};
        const GradientResult res = loss_gradient(c, c.theta, target, LossKind::kl());
        const auto fd = oracles::finite_difference_gradient(c, c.theta, target, LossKind::kl());
        for (std::size_t k = 0; k < fd.size(); ++k) {
            const double tol = std::max(1e-6 * std::abs(fd[k]), 1e-9);
            CHECK(std::abs(res.grad[k] - fd[k]) <= tol);
        }
    }
}

TEST_CASE("mps block gradients match finite differences") {
    std::mt19937_64 rng(131);
    Circuit c = build_mps_circuit(3, 1);
    std::uniform_real_distribution<double> angle(-1.0, 1.0);
    for (double& th : c.theta) th = angle(rng);
    const TargetDistribution target{3, oracles::random_distribution(8, rng)};
    const GradientResult res = loss_gradient(c, c.theta, target, LossKind::kl());
    const auto fd = oracles::finite_difference_gradient(c, c.theta, target, LossKind::kl());
    for (std::size_t k = 0; k < fd.size(); ++k) {
        const double tol = std::max(1e-6 * std::abs(fd[k]), 1e-9);
        CHECK(std::abs(res.grad[k] - fd[k]) <= tol);
    }
}

TEST_CASE("uniform target trains instantly on structure 2") {
    const TargetDistribution uniform{3, std::vector<double>(8, 1.0 / 8.0)};
    FixedAnsatzSpec spec{AnsatzFamily::Structure2, 3, 2, 7};
    FixedTrainConfig config;
    config.loss = LossKind::kl();
    config.adaptive_lr = false;
    config.lr = 0.05;
    config.max_epochs = 6000;
    config.eps2 = 1e-8;
    const TrainResult res = train_fixed(build_fixed_ansatz(spec), uniform, config);
    CHECK(res.report.final_kl <= 1e-6);
}

TEST_CASE("structure 2 learns a 3-qubit log-normal") {
    const PdfSpec pdf{LogNormalPdf{1.0, 0.5}, 1.0, 9.0, 0};
    const TargetDistribution target = discretize_pdf(pdf, 3);
    FixedAnsatzSpec spec{AnsatzFamily::Structure2, 3, 3, 1};
    FixedTrainConfig config;
    config.loss = LossKind::kl();
    config.max_epochs = 3000;
    config.eps2 = 1e-5;
    const TrainResult res = train_fixed(build_fixed_ansatz(spec), target, config);
    CHECK(res.report.final_kl <= 1e-2);
}
