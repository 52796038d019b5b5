#include "nles/les.hpp"

#include <cmath>
#include <stdexcept>

#include "nles/fft.hpp"
#include "nles/ops.hpp"

namespace nles {

namespace {

const Complex I_unit(0.0, 1.0);
constexpr double two_pi = 2.0 * pi;

// out_i = sum_j i kappa_j tau_ij for a (possibly symmetric) tensor given as
// spectral fields tau[i][j]
VectorField tensor_divergence(const Grid& g, const std::vector<std::vector<SpectralField>>& tau) {
    VectorField out(g);
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
        const double k[3] = {static_cast<double>(kx), static_cast<double>(ky),
                             static_cast<double>(kz)};
        for (int i = 0; i < g.dim; ++i) {
            Complex s = 0.0;
            for (int j = 0; j < g.dim; ++j) s += k[j] * tau[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][idx];
            out[i][idx] = I_unit * two_pi * s;
        }
    });
    return out;
}

}  // namespace

VectorField advection(const VectorField& v) {
    if (!is_divergence_free(v, 1e-10))
        throw std::invalid_argument("advection: input field is not divergence-free");
    const Grid& g = v.grid();
    const int d = g.dim;
    const std::size_t np = g.physical_size();

    std::vector<std::vector<double>> vp(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) vp[static_cast<std::size_t>(i)] = to_physical(v[i]);

    // symmetric tensor w_ij = v_i v_j
    std::vector<std::vector<SpectralField>> w(static_cast<std::size_t>(d),
                                              std::vector<SpectralField>(static_cast<std::size_t>(d)));
    std::vector<double> prod(np);
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            for (std::size_t x = 0; x < np; ++x)
                prod[x] = vp[static_cast<std::size_t>(i)][x] * vp[static_cast<std::size_t>(j)][x];
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = to_spectral(prod, g);
            if (j != i)
                w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                    w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    return dealias_23(tensor_divergence(g, w));
}

std::vector<double> lagged_les_coefficient(const VectorField& v_old, double p) {
    if (p < 2.0) throw std::invalid_argument("lagged_les_coefficient: p must be >= 2");
    const Grid& g = v_old.grid();
    const std::size_t np = g.physical_size();
    if (p == 2.0) return std::vector<double>(np, 1.0);

    std::vector<double> frob2(np, 0.0);
    for (int i = 0; i < g.dim; ++i) {
        VectorField gi = gradient(v_old[i]);
        for (int j = 0; j < g.dim; ++j) {
            const std::vector<double> dj = to_physical(gi[j]);
            for (std::size_t x = 0; x < np; ++x) frob2[x] += dj[x] * dj[x];
        }
    }
    const double e = 0.5 * (p - 2.0);
    std::vector<double> a(np);
    for (std::size_t x = 0; x < np; ++x) a[x] = std::pow(frob2[x], e);
    return a;
}

VectorField les_divergence_with_coefficient(const VectorField& v, const std::vector<double>& a,
                                            double nu_bar) {
    const Grid& g = v.grid();
    const std::size_t np = g.physical_size();
    if (a.size() != np)
        throw std::invalid_argument("les_divergence_with_coefficient: coefficient size mismatch");
    if (nu_bar == 0.0) return VectorField(g);
    const int d = g.dim;

    std::vector<std::vector<SpectralField>> tau(static_cast<std::size_t>(d),
                                                std::vector<SpectralField>(static_cast<std::size_t>(d)));
    std::vector<double> scratch(np);
    for (int i = 0; i < d; ++i) {
        VectorField gi = gradient(v[i]);
        for (int j = 0; j < d; ++j) {
            scratch = to_physical(gi[j]);
            for (std::size_t x = 0; x < np; ++x) scratch[x] *= nu_bar * a[x];
            tau[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = to_spectral(scratch, g);
        }
    }
    return dealias_23(tensor_divergence(g, tau));
}

VectorField ladyzhenskaya_divergence(const VectorField& v, double p, double nu_bar) {
    if (p < 2.0) throw std::invalid_argument("ladyzhenskaya_divergence: p must be >= 2");
    if (nu_bar < 0.0) throw std::invalid_argument("ladyzhenskaya_divergence: nu_bar must be >= 0");
    if (nu_bar == 0.0) return VectorField(v.grid());
    return les_divergence_with_coefficient(v, lagged_les_coefficient(v, p), nu_bar);
}

}  // namespace nles
