#pragma once

#include <array>
#include <cstddef>
#include <omp.h>

namespace bornforge::kernels {

// Amplitude indices use qubit 0 as the most significant bit, so a gate on
// qubit q strides by 2^(n-1-q). Kernels take that bit position directly.
//
// Each kernel comes in a serial reference flavor and an OpenMP flavor that
// partitions the amplitude pairs/quads across threads. Every iteration
// touches a disjoint index set, so each flavor is deterministic run to run;
// the two flavors agree to floating-point rounding (instruction selection may
// fuse multiply-adds differently). T is double (real fast path) or
// std::complex<double>; U is the matrix scalar and may be real while T is
// complex.

inline constexpr std::size_t kParallelCutoff = 1u << 12;

template <class T, class U>
void apply_1q_serial(T* amps, std::size_t dim, int pos, const std::array<U, 4>& u) {
    const std::size_t stride = std::size_t{1} << pos;
    const std::size_t mask = stride - 1;
    const std::size_t pairs = dim / 2;
    for (std::size_t k = 0; k < pairs; ++k) {
        const std::size_t i0 = ((k & ~mask) << 1) | (k & mask);
        const std::size_t i1 = i0 | stride;
        const T a0 = amps[i0];
        const T a1 = amps[i1];
        amps[i0] = u[0] * a0 + u[1] * a1;
        amps[i1] = u[2] * a0 + u[3] * a1;
    }
}

template <class T, class U>
void apply_1q(T* amps, std::size_t dim, int pos, const std::array<U, 4>& u) {
    if (dim < kParallelCutoff || omp_in_parallel()) {
        apply_1q_serial(amps, dim, pos, u);
        return;
    }
    const std::size_t stride = std::size_t{1} << pos;
    const std::size_t mask = stride - 1;
    const std::ptrdiff_t pairs = static_cast<std::ptrdiff_t>(dim / 2);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t k = 0; k < pairs; ++k) {
        const std::size_t i0 = ((static_cast<std::size_t>(k) & ~mask) << 1) |
                               (static_cast<std::size_t>(k) & mask);
        const std::size_t i1 = i0 | stride;
        const T a0 = amps[i0];
        const T a1 = amps[i1];
        amps[i0] = u[0] * a0 + u[1] * a1;
        amps[i1] = u[2] * a0 + u[3] * a1;
    }
}

// Matrix rows/columns are ordered by (bit_i, bit_j): index = 2*bit_i + bit_j,
// with qubit i the first tensor factor.
template <class T, class U>
void apply_2q_serial(T* amps, std::size_t dim, int pos_i, int pos_j,
                     const std::array<U, 16>& u) {
    const std::size_t si = std::size_t{1} << pos_i;
    const std::size_t sj = std::size_t{1} << pos_j;
    const int lo = pos_i < pos_j ? pos_i : pos_j;
    const int hi = pos_i < pos_j ? pos_j : pos_i;
    const std::size_t mlo = (std::size_t{1} << lo) - 1;
    const std::size_t mhi = (std::size_t{1} << hi) - 1;
    const std::size_t quads = dim / 4;
    for (std::size_t k = 0; k < quads; ++k) {
        const std::size_t t = ((k & ~mlo) << 1) | (k & mlo);
        const std::size_t base = ((t & ~mhi) << 1) | (t & mhi);
        const std::size_t i01 = base | sj;
        const std::size_t i10 = base | si;
        const std::size_t i11 = base | si | sj;
        const T a0 = amps[base];
        const T a1 = amps[i01];
        const T a2 = amps[i10];
        const T a3 = amps[i11];
        amps[base] = u[0] * a0 + u[1] * a1 + u[2] * a2 + u[3] * a3;
        amps[i01] = u[4] * a0 + u[5] * a1 + u[6] * a2 + u[7] * a3;
        amps[i10] = u[8] * a0 + u[9] * a1 + u[10] * a2 + u[11] * a3;
        amps[i11] = u[12] * a0 + u[13] * a1 + u[14] * a2 + u[15] * a3;
    }
}

template <class T, class U>
void apply_2q(T* amps, std::size_t dim, int pos_i, int pos_j, const std::array<U, 16>& u) {
    if (dim < kParallelCutoff || omp_in_parallel()) {
        apply_2q_serial(amps, dim, pos_i, pos_j, u);
        return;
    }
    const std::size_t si = std::size_t{1} << pos_i;
    const std::size_t sj = std::size_t{1} << pos_j;
    const int lo = pos_i < pos_j ? pos_i : pos_j;
    const int hi = pos_i < pos_j ? pos_j : pos_i;
    const std::size_t mlo = (std::size_t{1} << lo) - 1;
    const std::size_t mhi = (std::size_t{1} << hi) - 1;
    const std::ptrdiff_t quads = static_cast<std::ptrdiff_t>(dim / 4);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t kk = 0; kk < quads; ++kk) {
        const std::size_t k = static_cast<std::size_t>(kk);
        const std::size_t t = ((k & ~mlo) << 1) | (k & mlo);
        const std::size_t base = ((t & ~mhi) << 1) | (t & mhi);
        const std::size_t i01 = base | sj;
        const std::size_t i10 = base | si;
        const std::size_t i11 = base | si | sj;
        const T a0 = amps[base];
        const T a1 = amps[i01];
        const T a2 = amps[i10];
        const T a3 = amps[i11];
        amps[base] = u[0] * a0 + u[1] * a1 + u[2] * a2 + u[3] * a3;
        amps[i01] = u[4] * a0 + u[5] * a1 + u[6] * a2 + u[7] * a3;
        amps[i10] = u[8] * a0 + u[9] * a1 + u[10] * a2 + u[11] * a3;
        amps[i11] = u[12] * a0 + u[13] * a1 + u[14] * a2 + u[15] * a3;
    }
}

}  // namespace bornforge::kernels
