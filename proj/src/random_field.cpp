#include "nles/random_field.hpp"

#include <cmath>
#include <stdexcept>

#include "nles/ops.hpp"

namespace nles {

double RandomStream::uniform() {
    // top 53 bits -> [0,1)
    return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

double RandomStream::gaussian() {
    if (have_spare_) {
        have_spare_ = false;
        return spare_;
    }
    double u1 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * pi * u2;
    spare_ = r * std::sin(th);
    have_spare_ = true;
    return r * std::cos(th);
}

VectorField random_solenoidal_field(const Grid& grid, std::uint64_t seed, double energy,
                                    double peak_k) {
    if (energy <= 0.0 || peak_k <= 0.0)
        throw std::invalid_argument("random_solenoidal_field: energy and peak_k must be > 0");
    RandomStream rng(seed);
    VectorField v(grid);
    const int kmax = grid.dealias_limit();
    // draws happen for every stored mode in flat order, so the sequence does
    // not depend on the spectral envelope
    for_each_mode(grid, [&](std::size_t idx, int kx, int ky, int kz) {
        for (int c = 0; c < grid.dim; ++c) {
            const double re = rng.gaussian();
            const double im = rng.gaussian();
            const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                              static_cast<double>(kz) * kz;
            if (k2 == 0.0) continue;
            if (std::abs(kx) > kmax || std::abs(ky) > kmax || std::abs(kz) > kmax) continue;
            const double kmag = std::sqrt(k2);
            // smooth isotropic envelope, ~k^2 at large scales with a
            // Gaussian roll-off past peak_k
            const double amp = (kmag / peak_k) * std::exp(-0.5 * k2 / (peak_k * peak_k));
            v[c][idx] = amp * Complex(re, im);
        }
    });
    for (auto& c : v.comp) c.symmetrize();
    v = leray_project(std::move(v));
    const double e0 = 0.5 * l2_norm(v) * l2_norm(v);
    if (e0 <= 0.0) throw std::runtime_error("random_solenoidal_field: degenerate draw");
    v *= std::sqrt(energy / e0);
    v.solenoidal = true;
    return v;
}

}  // namespace nles
