#include "nles/interpolant.hpp"

#include <cmath>
#include <stdexcept>

#include "nles/fft.hpp"
#include "nles/ops.hpp"

namespace nles {

std::string to_string(InterpolantKind k) {
    return k == InterpolantKind::fourier_truncation ? "fourier" : "volume";
}

InterpolantKind interpolant_kind_from_string(const std::string& s) {
    if (s == "fourier") return InterpolantKind::fourier_truncation;
    if (s == "volume") return InterpolantKind::volume_average;
    throw std::invalid_argument("interpolant: unknown kind '" + s + "' (expected fourier|volume)");
}

InterpolantSpec InterpolantSpec::fourier(int k_c) {
    if (k_c < 1) throw std::invalid_argument("interpolant: k_c must be >= 1");
    return {InterpolantKind::fourier_truncation, 1.0 / k_c};
}

InterpolantSpec InterpolantSpec::volume(double h) {
    return {InterpolantKind::volume_average, h};
}

int InterpolantSpec::cutoff_k() const {
    return static_cast<int>(std::lround(1.0 / h));
}

int InterpolantSpec::boxes_per_axis() const {
    return static_cast<int>(std::lround(1.0 / h));
}

void InterpolantSpec::validate(const Grid& grid) const {
    if (!(h > 0.0)) throw std::invalid_argument("interpolant: h must be > 0");
    if (kind == InterpolantKind::fourier_truncation) {
        if (cutoff_k() < 1) throw std::invalid_argument("interpolant: k_c = round(1/h) must be >= 1");
    } else {
        const int m = boxes_per_axis();
        if (m < 1 || std::abs(m * h - 1.0) > 1e-9)
            throw std::invalid_argument("interpolant: 1/h must be an integer box count");
        if (grid.n % m != 0)
            throw std::invalid_argument("interpolant: box count must divide n");
    }
}

namespace {

SpectralField apply_fourier(int k_c, const SpectralField& f) {
    const Grid& g = f.grid();
    SpectralField out = f;
    const long kc2 = static_cast<long>(k_c) * k_c;
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
        const long k2 = static_cast<long>(kx) * kx + static_cast<long>(ky) * ky +
                        static_cast<long>(kz) * kz;
        if (k2 >= kc2) out[idx] = 0.0;  // strict shell |k| < k_c
    });
    return out;
}

SpectralField apply_volume(int m, const SpectralField& f) {
    const Grid& g = f.grid();
    const int n = g.n;
    const int s = n / m;  // points per box edge
    std::vector<double> phys = to_physical(f);

    if (g.dim == 2) {
        for (int bi = 0; bi < m; ++bi)
            for (int bj = 0; bj < m; ++bj) {
                double acc = 0.0;
                for (int i = bi * s; i < (bi + 1) * s; ++i)
                    for (int j = bj * s; j < (bj + 1) * s; ++j)
                        acc += phys[static_cast<std::size_t>(i) * n + j];
                const double mean = acc / (static_cast<double>(s) * s);
                for (int i = bi * s; i < (bi + 1) * s; ++i)
                    for (int j = bj * s; j < (bj + 1) * s; ++j)
                        phys[static_cast<std::size_t>(i) * n + j] = mean;
            }
    } else {
        for (int bi = 0; bi < m; ++bi)
            for (int bj = 0; bj < m; ++bj)
                for (int bl = 0; bl < m; ++bl) {
                    double acc = 0.0;
                    for (int i = bi * s; i < (bi + 1) * s; ++i)
                        for (int j = bj * s; j < (bj + 1) * s; ++j)
                            for (int l = bl * s; l < (bl + 1) * s; ++l)
                                acc += phys[(static_cast<std::size_t>(i) * n + j) * n + l];
                    const double mean = acc / (static_cast<double>(s) * s * s);
                    for (int i = bi * s; i < (bi + 1) * s; ++i)
                        for (int j = bj * s; j < (bj + 1) * s; ++j)
                            for (int l = bl * s; l < (bl + 1) * s; ++l)
                                phys[(static_cast<std::size_t>(i) * n + j) * n + l] = mean;
                }
    }
    return to_spectral(phys, g);
}

}  // namespace

SpectralField apply(const InterpolantSpec& spec, const SpectralField& f) {
    spec.validate(f.grid());
    if (spec.kind == InterpolantKind::fourier_truncation)
        return apply_fourier(spec.cutoff_k(), f);
    return apply_volume(spec.boxes_per_axis(), f);
}

VectorField apply(const InterpolantSpec& spec, const VectorField& v) {
    VectorField out(v.grid());
    for (int i = 0; i < v.dim(); ++i) out[i] = apply(spec, v[i]);
    // Fourier truncation is shell-local, so it commutes with the projection
    out.solenoidal = v.solenoidal && spec.kind == InterpolantKind::fourier_truncation;
    return out;
}

long observed_mode_count(const InterpolantSpec& spec, const Grid& grid) {
    if (spec.kind != InterpolantKind::fourier_truncation)
        throw std::invalid_argument("observed_mode_count: only defined for fourier truncation");
    const int k_c = spec.cutoff_k();
    const long kc2 = static_cast<long>(k_c) * k_c;
    const int lim = std::min(k_c, grid.dealias_limit());
    long count = 0;
    const int zlo = grid.dim == 3 ? -lim : 0;
    const int zhi = grid.dim == 3 ? lim : 0;
    for (int kx = -lim; kx <= lim; ++kx)
        for (int ky = -lim; ky <= lim; ++ky)
            for (int kz = zlo; kz <= zhi; ++kz) {
                const long k2 = static_cast<long>(kx) * kx + static_cast<long>(ky) * ky +
                                static_cast<long>(kz) * kz;
                if (k2 > 0 && k2 < kc2) ++count;
            }
    return count;
}

InterpolantConstants estimate_constants(const InterpolantSpec& spec,
                                        std::span<const SpectralField> samples) {
    if (samples.empty()) throw std::invalid_argument("estimate_constants: empty sample set");
    InterpolantConstants out;
    for (const SpectralField& phi : samples) {
        const double norm = l2_norm(phi);
        const double grad = h1_seminorm(phi);
        if (norm == 0.0 || grad == 0.0)
            throw std::invalid_argument("estimate_constants: samples must be nonzero with nonzero gradient");
        const SpectralField ip = apply(spec, phi);
        out.c_I_hat = std::max(out.c_I_hat, l2_norm(ip) / norm);
        out.c0_hat = std::max(out.c0_hat, l2_norm(phi - ip) / (spec.h * grad));
    }
    return out;
}

double theoretical_c0(const InterpolantSpec&) { return 1.0; }

}  // namespace nles
