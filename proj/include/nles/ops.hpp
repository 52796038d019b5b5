#pragma once

#include <vector>

#include "nles/field.hpp"

namespace nles {

/// Visit every stored mode as f(flat_index, kx, ky, kz); the halved axis is
/// ky in 2D (kz reported 0) and kz in 3D. Integer wavenumbers, kappa = 2*pi*k.
template <typename F>
inline void for_each_mode(const Grid& g, F&& f) {
    const int n = g.n, nk = g.nk();
    std::size_t idx = 0;
    if (g.dim == 2) {
        for (int i = 0; i < n; ++i) {
            const int kx = g.wavenumber(i);
            for (int l = 0; l < nk; ++l, ++idx) f(idx, kx, l, 0);
        }
    } else {
        for (int i = 0; i < n; ++i) {
            const int kx = g.wavenumber(i);
            for (int j = 0; j < n; ++j) {
                const int ky = g.wavenumber(j);
                for (int l = 0; l < nk; ++l, ++idx) f(idx, kx, ky, l);
            }
        }
    }
}

/// Parseval weight of a stored mode: conjugate partners on the interior of
/// the halved axis are not stored and count twice.
inline double mode_weight(const Grid& g, int ky, int kz) {
    const int klast = g.dim == 2 ? ky : kz;
    return (klast == 0 || klast == g.n / 2) ? 1.0 : 2.0;
}

VectorField gradient(const SpectralField& f);
SpectralField divergence(const VectorField& v);

/// Remove the gradient part: v - kappa (kappa.v)/|kappa|^2 per mode. Output
/// is discretely divergence-free; mode 0 is untouched.
VectorField leray_project(VectorField v);

/// 2/3-rule dealiasing: zero every mode with any |k_j| >= n/3.
SpectralField dealias_23(SpectralField f);
VectorField dealias_23(VectorField v);

double l2_norm(const SpectralField& f);
double l2_norm(const VectorField& v);
double h1_seminorm(const SpectralField& f);
double h1_seminorm(const VectorField& v);
double inner(const SpectralField& a, const SpectralField& b);
double inner(const VectorField& a, const VectorField& b);

/// L^p norm of |grad v|_F via quadrature of the physical-space gradient
/// tensor (uniform-grid Riemann sum, exact for band-limited integrands).
double lp_gradient_norm(const VectorField& v, double p);

/// Shell-summed kinetic energy, E[s] = 1/2 sum_{s-1/2<|k|<=s+1/2} |v(k)|^2.
std::vector<double> energy_spectrum(const VectorField& v);

/// Dealiased pseudospectral product of two scalar fields.
SpectralField pseudospectral_product(const SpectralField& a, const SpectralField& b);

/// max |kappa . v(k)| and max |kappa||v(k)| over modes, for divergence checks
struct DivergenceStats {
    double max_div = 0.0;
    double scale = 0.0;
};
DivergenceStats divergence_stats(const VectorField& v);
bool is_divergence_free(const VectorField& v, double rel_tol = 1e-12);

double max_abs_physical(const SpectralField& f);
double max_abs_physical(const VectorField& v);

}  // namespace nles
