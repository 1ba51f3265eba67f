#include <chrono>
#include <cstdio>
#include <numbers>
#include <omp.h>
#include <random>
#include <vector>

#include "bornforge/kernels.hpp"
#include "bornforge/statevector.hpp"
#include "bornforge/threads.hpp"

// Times the serial reference kernels against the OpenMP flavors on the gate
// sizes the trainer actually uses, and reports the per-flavor sweep rate.

using namespace bornforge;

namespace {

using clock_type = std::chrono::steady_clock;

template <class Fn>
double time_per_apply(Fn&& fn, int repeats) {
    const auto start = clock_type::now();
    for (int r = 0; r < repeats; ++r) fn();
    const auto stop = clock_type::now();
    return std::chrono::duration<double>(stop - start).count() / repeats;
}

template <class T>
std::vector<T> random_amps(std::size_t dim, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<T> amps(dim);
    for (T& a : amps) {
        if constexpr (std::is_same_v<T, double>)
            a = gauss(rng);
        else
            a = cplx(gauss(rng), gauss(rng));
    }
    return amps;
}

template <class T>
void bench_path(const char* label, int n_qubits, std::mt19937_64& rng) {
    const std::size_t dim = std::size_t{1} << n_qubits;
    auto amps = random_amps<T>(dim, rng);
    const Mat4r u = gate_matrix_2q_real(GateKind::XY, 0.7371);
    const int pos_i = n_qubits - 1;
    const int pos_j = n_qubits / 2;
    const int repeats = n_qubits <= 16 ? 2000 : 200;

    const double serial = time_per_apply(
        [&] { kernels::apply_2q_serial(amps.data(), dim, pos_i, pos_j, u); }, repeats);
    const double parallel = time_per_apply(
        [&] { kernels::apply_2q(amps.data(), dim, pos_i, pos_j, u); }, repeats);

    std::printf("%-8s n=%2d  serial %8.3f us  omp %8.3f us  speedup %5.2fx  %7.1f Mamp/s\n",
                label, n_qubits, serial * 1e6, parallel * 1e6, serial / parallel,
                static_cast<double>(dim) / parallel / 1e6);
}

}  // namespace

int main() {
    const int threads = apply_thread_limit_from_env();
    std::printf("two-qubit gate kernel sweep, %d thread(s)\n", threads);
    std::mt19937_64 rng(7);
    for (int n : {10, 12, 14, 16, 18}) {
        bench_path<double>("real", n, rng);
        bench_path<cplx>("complex", n, rng);
    }
    return 0;
}
