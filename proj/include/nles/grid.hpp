#pragma once

#include <cstddef>
#include <numbers>
#include <stdexcept>

namespace nles {

inline constexpr double pi = std::numbers::pi;

/// Uniform periodic grid on [0,1]^dim. Mode index i along a full axis maps to
/// the integer wavenumber k = i for i <= n/2, k = i - n otherwise; the
/// physical wavenumber is kappa = 2*pi*k. The last axis is stored halved
/// (real-to-complex layout, indices 0..n/2).
struct Grid {
    int dim = 2;
    int n = 0;

    Grid() = default;
    Grid(int dim_, int n_) : dim(dim_), n(n_) { validate(); }

    void validate() const {
        if (dim != 2 && dim != 3)
            throw std::invalid_argument("Grid: dim must be 2 or 3");
        if (n < 8 || n % 2 != 0)
            throw std::invalid_argument("Grid: n must be even and >= 8");
    }

    bool operator==(const Grid&) const = default;

    // smallest Stokes eigenvalue for mean-free fields on [0,1]^dim
    static constexpr double lambda1 = 4.0 * pi * pi;

    int nk() const { return n / 2 + 1; }  // stored modes along the last axis

    std::size_t spectral_size() const {
        std::size_t s = static_cast<std::size_t>(nk());
        for (int d = 1; d < dim; ++d) s *= static_cast<std::size_t>(n);
        return s;
    }

    std::size_t physical_size() const {
        std::size_t s = 1;
        for (int d = 0; d < dim; ++d) s *= static_cast<std::size_t>(n);
        return s;
    }

    double dx() const { return 1.0 / n; }

    // integer wavenumber of a full-axis index
    int wavenumber(int idx) const { return idx <= n / 2 ? idx : idx - n; }

    // largest |k_j| kept by the 2/3 dealiasing rule: |k_j| < n/3
    int dealias_limit() const { return (n - 1) / 3; }
};

}  // namespace nles
