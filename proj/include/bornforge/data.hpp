#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <variant>
#include <vector>

#include "bornforge/losses.hpp"

namespace bornforge {

struct LogNormalPdf {
    double mu = 0.0;
    double sigma = 1.0;
};

struct BimodalPdf {
    double mu1 = 0.0;
    double sigma1 = 1.0;
    double mu2 = 0.0;
    double sigma2 = 1.0;
};

struct TriangularPdf {
    double lo = 0.0;
    double mode = 0.0;
    double hi = 1.0;
};

/// Analytic density truncated to [a, b), discretized on 2^n integer points
/// with an optional m-bit auxiliary register refining each unit interval.
/// Grid points at or beyond b - a are zero-padded before normalization.
struct PdfSpec {
    std::variant<LogNormalPdf, BimodalPdf, TriangularPdf> family;
    double a = 0.0;
    double b = 0.0;
    int aux_bits = 0;

    void validate() const;
};

double pdf_value(const PdfSpec& spec, double t);

/// p(x, y) = f(x + y/2^m + a) / sum f over the grid; flat index x * 2^m + y,
/// so the integer register sits above the auxiliary one.
TargetDistribution discretize_pdf(const PdfSpec& spec, int n_bits);

/// Histogram of samples on the same (n, m) grid: bin centers x + y/2^m + a
/// with width 2^-m; samples on the outer half-bin edges are required to lie
/// inside [a - 2^-(m+1), b + 2^-(m+1)).
TargetDistribution empirical_distribution(std::span<const double> samples, int n_bits,
                                          int aux_bits, double a, double b);

/// Uniform distribution over the 2^rows + 2^cols - 2 valid bars-and-stripes
/// bitmaps, pixels mapped to qubits row-major.
TargetDistribution bas_distribution(int rows, int cols);

std::size_t bas_pattern_count(int rows, int cols);

struct ImageGray {
    int rows = 0;
    int cols = 0;
    std::vector<double> pixels;  // row-major, nonnegative

    double& at(int r, int c) { return pixels[static_cast<std::size_t>(r) * cols + c]; }
    double at(int r, int c) const { return pixels[static_cast<std::size_t>(r) * cols + c]; }
};

/// Row-major flatten and normalize to a probability vector. Side lengths must
/// be powers of two and the image must carry some mass.
TargetDistribution image_to_distribution(const ImageGray& image);

/// Rescales a probability vector to [0, 255] grayscale by its maximum.
ImageGray distribution_to_image(std::span<const double> q, int rows, int cols);

ImageGray load_pgm(const std::filesystem::path& path);
void save_pgm(const ImageGray& image, const std::filesystem::path& path);

/// Ascending stable sort of the masses; perm[k] is the original index of the
/// k-th smallest entry, so sorted[k] = p[perm[k]].
struct Remap {
    std::vector<double> sorted;
    std::vector<std::uint32_t> perm;
};

Remap remap_sorted(std::span<const double> p);

/// Inverse of remap_sorted: out[perm[k]] = q[k]. Exact bit-for-bit round trip.
std::vector<double> unremap(std::span<const double> q, std::span<const std::uint32_t> perm);

/// Ascending |alpha| normalized by sum |alpha|, with the relabeling
/// permutation recorded for downstream SEL reindexing.
struct LcuSort {
    std::vector<double> p;
    std::vector<std::uint32_t> perm;
};

LcuSort sort_lcu_coefficients(std::span<const double> alpha);

}  // namespace bornforge
