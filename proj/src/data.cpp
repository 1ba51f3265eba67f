#include "bornforge/data.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace bornforge {

namespace {

bool is_power_of_two(std::size_t v) { return v != 0 && (v & (v - 1)) == 0; }

int qubits_for(std::size_t dim) {
    int n = 0;
    while ((std::size_t{1} << n) < dim) ++n;
    return n;
}

TargetDistribution normalize_to_target(std::vector<double> mass) {
    const double sum = std::accumulate(mass.begin(), mass.end(), 0.0);
    if (!(sum > 0.0)) throw std::invalid_argument("distribution has no mass");
    for (double& v : mass) v /= sum;
    return {qubits_for(mass.size()), std::move(mass)};
}

double gaussian(double t, double mu, double sigma) {
    const double z = (t - mu) / sigma;
    return std::exp(-0.5 * z * z) / (sigma * std::sqrt(2.0 * std::numbers::pi));
}

}  // namespace

void PdfSpec::validate() const {
    if (!(b > a)) throw std::invalid_argument("empty interval");
    if (aux_bits < 0) throw std::invalid_argument("negative auxiliary bits");
    if (const auto* ln = std::get_if<LogNormalPdf>(&family)) {
        if (ln->sigma <= 0.0) throw std::invalid_argument("log-normal sigma must be positive");
    } else if (const auto* bi = std::get_if<BimodalPdf>(&family)) {
        if (bi->sigma1 <= 0.0 || bi->sigma2 <= 0.0)
            throw std::invalid_argument("bimodal sigmas must be positive");
    } else if (const auto* tr = std::get_if<TriangularPdf>(&family)) {
        if (!(tr->lo <= tr->mode && tr->mode <= tr->hi && tr->lo < tr->hi))
            throw std::invalid_argument("triangular needs lo <= mode <= hi, lo < hi");
    }
}

double pdf_value(const PdfSpec& spec, double t) {
    if (const auto* ln = std::get_if<LogNormalPdf>(&spec.family)) {
        if (t <= 0.0) throw std::domain_error("log-normal density undefined at t <= 0");
        const double z = (std::log(t) - ln->mu) / ln->sigma;
        return std::exp(-0.5 * z * z) /
               (t * ln->sigma * std::sqrt(2.0 * std::numbers::pi));
    }
    if (const auto* bi = std::get_if<BimodalPdf>(&spec.family)) {
        return 0.5 * gaussian(t, bi->mu1, bi->sigma1) + 0.5 * gaussian(t, bi->mu2, bi->sigma2);
    }
    const auto& tr = std::get<TriangularPdf>(spec.family);
    if (t < tr.lo || t > tr.hi) return 0.0;
    if (t == tr.mode) return 2.0 / (tr.hi - tr.lo);
    if (t < tr.mode) return 2.0 * (t - tr.lo) / ((tr.hi - tr.lo) * (tr.mode - tr.lo));
    return 2.0 * (tr.hi - t) / ((tr.hi - tr.lo) * (tr.hi - tr.mode));
}

TargetDistribution discretize_pdf(const PdfSpec& spec, int n_bits) {
    spec.validate();
    if (n_bits < 1 || n_bits + spec.aux_bits > 30)
        throw std::invalid_argument("unsupported grid size");
    if (spec.b - spec.a > static_cast<double>(std::size_t{1} << n_bits) + 1e-9)
        throw std::invalid_argument("interval wider than the 2^n grid");
    const std::size_t nx = std::size_t{1} << n_bits;
    const std::size_t ny = std::size_t{1} << spec.aux_bits;
    const double width = spec.b - spec.a;
    std::vector<double> mass(nx * ny, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
        for (std::size_t y = 0; y < ny; ++y) {
            const double offset =
                static_cast<double>(x) + static_cast<double>(y) / static_cast<double>(ny);
            if (offset >= width) continue;  // right zero-padding
            mass[x * ny + y] = pdf_value(spec, offset + spec.a);
        }
    }
    return normalize_to_target(std::move(mass));
}

TargetDistribution empirical_distribution(std::span<const double> samples, int n_bits,
                                          int aux_bits, double a, double b) {
    if (samples.empty()) throw std::invalid_argument("no samples");
    if (n_bits < 1 || aux_bits < 0 || n_bits + aux_bits > 30)
        throw std::invalid_argument("unsupported grid size");
    if (std::abs((b - a) - static_cast<double>(std::size_t{1} << n_bits)) > 1e-9)
        throw std::invalid_argument("interval must span 2^n");
    const double subdiv = static_cast<double>(std::size_t{1} << aux_bits);
    const double half_bin = 0.5 / subdiv;
    const std::size_t bins = std::size_t{1} << (n_bits + aux_bits);
    std::vector<double> mass(bins, 0.0);
    for (double s : samples) {
        if (s < a - half_bin || s >= b + half_bin)
            throw std::out_of_range("sample outside the discretization range");
        const double v = (s - a) * subdiv;
        const auto idx = static_cast<std::size_t>(std::clamp(
            std::floor(v + 0.5), 0.0, static_cast<double>(bins - 1)));
        mass[idx] += 1.0;
    }
    for (double& v : mass) v /= static_cast<double>(samples.size());
    return {n_bits + aux_bits, std::move(mass)};
}

std::size_t bas_pattern_count(int rows, int cols) {
    return (std::size_t{1} << rows) + (std::size_t{1} << cols) - 2;
}

TargetDistribution bas_distribution(int rows, int cols) {
    if (rows < 1 || cols < 1) throw std::invalid_argument("degenerate grid");
    const int n = rows * cols;
    if (n > 30) throw std::invalid_argument("grid exceeds the simulator cap");
    const std::size_t dim = std::size_t{1} << n;
    std::vector<double> mass(dim, 0.0);

    const auto basis_index = [&](auto&& pixel_on) {
        std::size_t idx = 0;
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c)
                if (pixel_on(r, c)) idx |= std::size_t{1} << (n - 1 - (r * cols + c));
        return idx;
    };

    for (std::size_t bar = 0; bar < (std::size_t{1} << rows); ++bar)
        mass[basis_index([&](int r, int) { return (bar >> r) & 1; })] = 1.0;
    for (std::size_t stripe = 0; stripe < (std::size_t{1} << cols); ++stripe)
        mass[basis_index([&](int, int c) { return (stripe >> c) & 1; })] = 1.0;

    return normalize_to_target(std::move(mass));
}

TargetDistribution image_to_distribution(const ImageGray& image) {
    if (image.rows < 1 || image.cols < 1 ||
        !is_power_of_two(static_cast<std::size_t>(image.rows)) ||
        !is_power_of_two(static_cast<std::size_t>(image.cols)))
        throw std::invalid_argument("image sides must be powers of two");
    if (image.pixels.size() != static_cast<std::size_t>(image.rows) * image.cols)
        throw std::invalid_argument("pixel buffer size mismatch");
    for (double v : image.pixels)
        if (v < 0.0) throw std::invalid_argument("negative pixel value");
    std::vector<double> mass = image.pixels;
    return normalize_to_target(std::move(mass));  // throws on an all-zero image
}

ImageGray distribution_to_image(std::span<const double> q, int rows, int cols) {
    if (q.size() != static_cast<std::size_t>(rows) * cols)
        throw std::invalid_argument("distribution does not fit the image shape");
    const double peak = *std::max_element(q.begin(), q.end());
    ImageGray img{rows, cols, std::vector<double>(q.size(), 0.0)};
    if (peak > 0.0)
        for (std::size_t i = 0; i < q.size(); ++i) img.pixels[i] = q[i] / peak * 255.0;
    return img;
}

ImageGray load_pgm(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    std::string magic;
    in >> magic;
    if (magic != "P5") throw std::runtime_error("not a binary PGM file: " + path.string());
    const auto next_int = [&in, &path]() {
        int value;
        while (true) {
            in >> std::ws;
            if (in.peek() == '#') {
                std::string comment;
                std::getline(in, comment);
                continue;
            }
            if (!(in >> value)) throw std::runtime_error("bad PGM header: " + path.string());
            return value;
        }
    };
    const int cols = next_int();
    const int rows = next_int();
    const int maxval = next_int();
    if (maxval <= 0 || maxval > 255)
        throw std::runtime_error("only 8-bit PGM is supported: " + path.string());
    in.get();  // single whitespace after maxval
    std::vector<unsigned char> raw(static_cast<std::size_t>(rows) * cols);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (!in) throw std::runtime_error("truncated PGM data: " + path.string());
    ImageGray img{rows, cols, std::vector<double>(raw.size())};
    for (std::size_t i = 0; i < raw.size(); ++i) img.pixels[i] = raw[i];
    return img;
}

void save_pgm(const ImageGray& image, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << "P5\n" << image.cols << " " << image.rows << "\n255\n";
    for (double v : image.pixels) {
        const double clamped = std::clamp(v, 0.0, 255.0);
        out.put(static_cast<char>(static_cast<unsigned char>(std::lround(clamped))));
    }
}

Remap remap_sorted(std::span<const double> p) {
    Remap out;
    out.perm.resize(p.size());
    std::iota(out.perm.begin(), out.perm.end(), 0u);
    std::stable_sort(out.perm.begin(), out.perm.end(),
                     [&](std::uint32_t a, std::uint32_t b) { return p[a] < p[b]; });
    out.sorted.resize(p.size());
    for (std::size_t k = 0; k < p.size(); ++k) out.sorted[k] = p[out.perm[k]];
    return out;
}

std::vector<double> unremap(std::span<const double> q, std::span<const std::uint32_t> perm) {
    if (q.size() != perm.size()) throw std::invalid_argument("permutation length mismatch");
    std::vector<double> out(q.size());
    for (std::size_t k = 0; k < q.size(); ++k) out[perm[k]] = q[k];
    return out;
}

LcuSort sort_lcu_coefficients(std::span<const double> alpha) {
    std::vector<double> mags(alpha.size());
    double total = 0.0;
    for (std::size_t j = 0; j < alpha.size(); ++j) {
        mags[j] = std::abs(alpha[j]);
        total += mags[j];
    }
    if (!(total > 0.0)) throw std::invalid_argument("all-zero LCU coefficients");
    Remap rm = remap_sorted(mags);
    LcuSort out;
    out.perm = std::move(rm.perm);
    out.p.resize(alpha.size());
    for (std::size_t j = 0; j < alpha.size(); ++j) out.p[j] = rm.sorted[j] / total;
    return out;
}

}  // namespace bornforge
