#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "bornforge/statevector.hpp"
#include "support/oracles.hpp"

using namespace bornforge;

namespace {
constexpr double kPi = std::numbers::pi;

const std::array<GateKind, 4> kPoolKinds = {GateKind::ZY, GateKind::XY, GateKind::CRY,
                                            GateKind::RY};
}  // namespace

TEST_CASE("basis states") {
    const StateVector s1 = init_basis_state(1, 0);
    CHECK(s1.amplitudes()[0] == cplx(1.0));
    CHECK(s1.amplitudes()[1] == cplx(0.0));

    const StateVector s2 = init_basis_state(2, 3);
    for (std::size_t x = 0; x < 4; ++x)
        CHECK(s2.amplitudes()[x] == (x == 3 ? cplx(1.0) : cplx(0.0)));

    CHECK_THROWS_AS(init_basis_state(3, 8), std::out_of_range);
}

TEST_CASE("single gate examples") {
    // RY(pi)|0> = |1>
    StateVector s = init_basis_state(1, 0);
    s.apply_inplace(make_gate(GateKind::RY, 0), kPi);
    CHECK(std::abs(s.amplitudes()[0]) < 1e-15);
    CHECK(std::abs(s.amplitudes()[1] - cplx(1.0)) < 1e-15);

    // ZY at zero angle is the identity.
    std::mt19937_64 rng(11);
    const StateVector psi = oracles::random_state(3, rng);
    const StateVector out = apply_gate(psi, make_gate(GateKind::ZY, 0, 2), 0.0);
    for (std::size_t x = 0; x < psi.dim(); ++x)
        CHECK(out.amplitudes()[x] == psi.amplitudes()[x]);

    // CRY(pi) with set control: |10> -> |11>
    StateVector c = init_basis_state(2, 2);
    c.apply_inplace(make_gate(GateKind::CRY, 0, 1), kPi);
    CHECK(std::abs(c.amplitudes()[3] - cplx(1.0)) < 1e-15);
    CHECK(std::abs(c.amplitudes()[2]) < 1e-15);

    // ... and leaves a cleared control alone.
    StateVector d = init_basis_state(2, 0);
    d.apply_inplace(make_gate(GateKind::CRY, 0, 1), kPi);
    CHECK(std::abs(d.amplitudes()[0] - cplx(1.0)) < 1e-15);
}

TEST_CASE("gate application errors") {
    StateVector s = init_basis_state(2, 0);
    CHECK_THROWS_AS(s.apply_inplace(make_gate(GateKind::RY, 5), 0.1), std::out_of_range);
    CHECK_THROWS_AS(make_gate(GateKind::ZY, 1), std::invalid_argument);
    CHECK_THROWS_AS(s.apply_inplace(make_gate(GateKind::ZY, 1, 1), 0.1),
                    std::invalid_argument);
}

TEST_CASE("run_circuit basics") {
    Circuit empty;
    empty.n_qubits = 2;
    const StateVector s = run_circuit(empty);
    CHECK(s.amplitudes()[0] == cplx(1.0));

    Circuit c;
    c.n_qubits = 2;
    c.push_parameterized(GateKind::RY, 0, -1, kPi / 2.0);
    c.push_parameterized(GateKind::RY, 1, -1, kPi / 2.0);
    const StateVector uniform = run_circuit(c);
    for (std::size_t x = 0; x < 4; ++x)
        CHECK(std::abs(uniform.amplitudes()[x] - cplx(0.5)) < 1e-15);

    CHECK_THROWS_AS(run_circuit(c, std::vector<double>{0.1}), std::invalid_argument);
}

TEST_CASE("circuit followed by parameter-negated reverse returns to |0...0>") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 10; ++trial) {
        Circuit c = oracles::random_circuit(4, 12, kPoolKinds, rng);
        StateVector s = run_circuit(c);
        for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it)
            s.apply_inplace(*it, it->slot >= 0
                                     ? -c.theta[static_cast<std::size_t>(it->slot)]
                                     : 0.0);
        CHECK(std::abs(s.amplitudes()[0] - cplx(1.0)) < 1e-12);
        CHECK(std::abs(s.norm_sq() - 1.0) < 1e-12);
    }
}

TEST_CASE("born probabilities") {
    const StateVector one = init_basis_state(1, 1);
    const auto q1 = born_probabilities(one);
    CHECK(q1[0] == 0.0);
    CHECK(q1[1] == 1.0);

    Circuit c;
    c.n_qubits = 3;
    for (int qb = 0; qb < 3; ++qb) c.push_parameterized(GateKind::RY, qb, -1, kPi / 2.0);
    for (double v : born_probabilities(run_circuit(c))) CHECK(v == doctest::Approx(0.125));

    std::mt19937_64 rng(5);
    const auto q = born_probabilities(oracles::random_state(5, rng));
    double sum = 0.0;
    for (double v : q) sum += v;
    CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("norm and reality preservation across the pool") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    for (GateKind kind : kPoolKinds) {
        for (int trial = 0; trial < 20; ++trial) {
            StateVector s = oracles::random_real_state(4, rng);
            const int q0 = static_cast<int>(rng() % 4);
            int q1 = -1;
            if (is_two_qubit(kind)) {
                q1 = static_cast<int>(rng() % 4);
                while (q1 == q0) q1 = static_cast<int>(rng() % 4);
            }
            s.apply_inplace(make_gate(kind, q0, q1), angle(rng));
            CHECK(std::abs(s.norm_sq() - 1.0) < 1e-10);
            CHECK(s.max_abs_imag() <= 1e-12);
        }
    }
}

TEST_CASE("pool circuits on |0...0> stay real") {
    std::mt19937_64 rng(19);
    for (int trial = 0; trial < 10; ++trial) {
        const Circuit c = oracles::random_circuit(4, 20, kPoolKinds, rng);
        CHECK(c.real_valued());
        const StateVector s = run_circuit(c);
        CHECK(s.max_abs_imag() <= 1e-12);
        CHECK(std::abs(s.norm_sq() - 1.0) < 1e-10);
    }
}

TEST_CASE("apply_gate agrees with the dense-matrix construction") {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> angle(-kPi, kPi);
    const std::array<GateKind, 9> kinds = {
        GateKind::ZY, GateKind::XY,  GateKind::CRY, GateKind::RY, GateKind::RX,
        GateKind::RZ, GateKind::CRZ, GateKind::ZZ,  GateKind::YY};
    for (int n = 2; n <= 4; ++n) {
        for (GateKind kind : kinds) {
            for (int trial = 0; trial < 4; ++trial) {
                const int q0 = static_cast<int>(rng() % n);
                int q1 = -1;
                if (is_two_qubit(kind)) {
                    q1 = static_cast<int>(rng() % n);
                    while (q1 == q0) q1 = static_cast<int>(rng() % n);
                }
                const GateInstance g = make_gate(kind, q0, q1);
                const double th = angle(rng);
                const StateVector psi = oracles::random_state(n, rng);
                const StateVector fast = apply_gate(psi, g, th);
                const Eigen::MatrixXcd u = oracles::dense_gate_matrix(g, th, n);
                Eigen::VectorXcd v(psi.dim());
                for (std::size_t x = 0; x < psi.dim(); ++x)
                    v[static_cast<Eigen::Index>(x)] = psi.amplitudes()[x];
                const Eigen::VectorXcd expect = u * v;
                for (std::size_t x = 0; x < psi.dim(); ++x)
                    CHECK(std::abs(fast.amplitudes()[x] -
                                   expect[static_cast<Eigen::Index>(x)]) < 1e-12);
            }
        }
    }
}

TEST_CASE("real fast path matches the complex path") {
    std::mt19937_64 rng(41);
    for (int trial = 0; trial < 5; ++trial) {
        const Circuit c = oracles::random_circuit(5, 25, kPoolKinds, rng);
        const auto real_amps = run_circuit_real(c, c.theta);
        const StateVector complex_path = run_circuit(c);
        for (std::size_t x = 0; x < real_amps.size(); ++x) {
            CHECK(std::abs(real_amps[x] - complex_path.amplitudes()[x].real()) <= 1e-14);
            CHECK(complex_path.amplitudes()[x].imag() == 0.0);
        }
    }
    Circuit with_rz;
    with_rz.n_qubits = 2;
    with_rz.push_parameterized(GateKind::RZ, 0, -1, 0.3);
    CHECK_THROWS_AS(run_circuit_real(with_rz, with_rz.theta), std::invalid_argument);
}

TEST_CASE("reduced density matrices") {
    // product state |0> x |+> x |0>, keep (0, 1)
    Circuit c;
    c.n_qubits = 3;
    c.push_parameterized(GateKind::RY, 1, -1, kPi / 2.0);
    const StateVector product = run_circuit(c);
    const DensityMatrix4 rho = reduced_density_2q(product, 0, 1);
    DensityMatrix4 expect = DensityMatrix4::Zero();
    expect(0, 0) = expect(0, 1) = expect(1, 0) = expect(1, 1) = 0.5;
    CHECK((rho - expect).cwiseAbs().maxCoeff() < 1e-12);

    // GHZ_3: keep (0, 1) -> (|00><00| + |11><11|) / 2
    std::vector<cplx> ghz(8, 0.0);
    ghz[0] = ghz[7] = 1.0 / std::sqrt(2.0);
    const StateVector ghz_state(3, std::move(ghz));
    const DensityMatrix4 rho_ghz = reduced_density_2q(ghz_state, 0, 1);
    DensityMatrix4 expect_ghz = DensityMatrix4::Zero();
    expect_ghz(0, 0) = expect_ghz(3, 3) = 0.5;
    CHECK((rho_ghz - expect_ghz).cwiseAbs().maxCoeff() < 1e-12);

    CHECK_THROWS_AS(reduced_density_2q(ghz_state, 1, 1), std::invalid_argument);
}

TEST_CASE("reduced density against the index-sum oracle") {
    std::mt19937_64 rng(53);
    const StateVector psi = oracles::random_state(4, rng);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            if (i == j) continue;
            const DensityMatrix4 rho = reduced_density_2q(psi, i, j);
            const Eigen::Matrix4cd expect = oracles::partial_trace_oracle(psi, i, j);
            CHECK((rho - expect).cwiseAbs().maxCoeff() < 1e-12);
            CHECK(std::abs(rho.trace().real() - 1.0) < 1e-10);
            CHECK((rho - rho.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
            Eigen::SelfAdjointEigenSolver<DensityMatrix4> es(rho, Eigen::EigenvaluesOnly);
            CHECK(es.eigenvalues().minCoeff() > -1e-10);
        }
    }
}

TEST_CASE("reduced density swap symmetry") {
    std::mt19937_64 rng(61);
    const StateVector psi = oracles::random_state(4, rng);
    const DensityMatrix4 rho_ij = reduced_density_2q(psi, 1, 3);
    const DensityMatrix4 rho_ji = reduced_density_2q(psi, 3, 1);
    Eigen::Matrix4cd swap = Eigen::Matrix4cd::Zero();
    swap(0, 0) = swap(1, 2) = swap(2, 1) = swap(3, 3) = 1.0;
    CHECK((rho_ij - swap * rho_ji * swap).cwiseAbs().maxCoeff() < 1e-12);
}
