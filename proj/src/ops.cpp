#include "nles/ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nles/fft.hpp"

namespace nles {

namespace {
const Complex I_unit(0.0, 1.0);
constexpr double two_pi = 2.0 * pi;
}  // namespace

VectorField gradient(const SpectralField& f) {
    const Grid& g = f.grid();
    VectorField out(g);
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
        const Complex c = I_unit * two_pi * f[idx];
        out[0][idx] = static_cast<double>(kx) * c;
        out[1][idx] = static_cast<double>(ky) * c;
        if (g.dim == 3) out[2][idx] = static_cast<double>(kz) * c;
    });
    return out;
}

SpectralField divergence(const VectorField& v) {
    const Grid& g = v.grid();
    SpectralField out(g);
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
        Complex s = static_cast<double>(kx) * v[0][idx] + static_cast<double>(ky) * v[1][idx];
        if (g.dim == 3) s += static_cast<double>(kz) * v[2][idx];
        out[idx] = I_unit * two_pi * s;
    });
    return out;
}

VectorField leray_project(VectorField v) {
    const Grid& g = v.grid();
    const int d = g.dim;
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
        const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                          static_cast<double>(kz) * kz;
        if (k2 == 0.0) return;
        Complex kdotv = static_cast<double>(kx) * v[0][idx] + static_cast<double>(ky) * v[1][idx];
        if (d == 3) kdotv += static_cast<double>(kz) * v[2][idx];
        const Complex q = kdotv / k2;
        v[0][idx] -= static_cast<double>(kx) * q;
        v[1][idx] -= static_cast<double>(ky) * q;
        if (d == 3) v[2][idx] -= static_cast<double>(kz) * q;
    });
    v.solenoidal = true;
    return v;
}

SpectralField dealias_23(SpectralField f) {
    const Grid& g = f.grid();
    const int kmax = g.dealias_limit();
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
        if (std::abs(kx) > kmax || std::abs(ky) > kmax || std::abs(kz) > kmax) f[idx] = 0.0;
    });
    return f;
}

VectorField dealias_23(VectorField v) {
    for (auto& c : v.comp) c = dealias_23(std::move(c));
    return v;
}

double l2_norm(const SpectralField& f) {
    const Grid& g = f.grid();
    double s = 0.0;
    for_each_mode(g, [&](std::size_t idx, int, int ky, int kz) {
        s += mode_weight(g, ky, kz) * std::norm(f[idx]);
    });
    return std::sqrt(s);
}

double l2_norm(const VectorField& v) {
    double s = 0.0;
    for (const auto& c : v.comp) {
        const double n = l2_norm(c);
        s += n * n;
    }
    return std::sqrt(s);
}

double h1_seminorm(const SpectralField& f) {
    const Grid& g = f.grid();
    double s = 0.0;
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
        const double k2 = static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                          static_cast<double>(kz) * kz;
        s += mode_weight(g, ky, kz) * (two_pi * two_pi * k2) * std::norm(f[idx]);
    });
    return std::sqrt(s);
}

double h1_seminorm(const VectorField& v) {
    double s = 0.0;
    for (const auto& c : v.comp) {
        const double n = h1_seminorm(c);
        s += n * n;
    }
    return std::sqrt(s);
}

double inner(const SpectralField& a, const SpectralField& b) {
    const Grid& g = a.grid();
    if (!(g == b.grid())) throw std::invalid_argument("inner: grid mismatch");
    double s = 0.0;
    for_each_mode(g, [&](std::size_t idx, int, int ky, int kz) {
        s += mode_weight(g, ky, kz) * (a[idx] * std::conj(b[idx])).real();
    });
    return s;
}

double inner(const VectorField& a, const VectorField& b) {
    double s = 0.0;
    for (int i = 0; i < a.dim(); ++i) s += inner(a[i], b[i]);
    return s;
}

double lp_gradient_norm(const VectorField& v, double p) {
    if (p < 1.0) throw std::invalid_argument("lp_gradient_norm: p must be >= 1");
    const Grid& g = v.grid();
    const std::size_t np = g.physical_size();
    std::vector<double> frob2(np, 0.0);
    for (int i = 0; i < g.dim; ++i) {
        VectorField gi = gradient(v[i]);
        for (int j = 0; j < g.dim; ++j) {
            std::vector<double> dj = to_physical(gi[j]);
            for (std::size_t x = 0; x < np; ++x) frob2[x] += dj[x] * dj[x];
        }
    }
    double acc = 0.0;
    if (p == 2.0) {
        for (double s : frob2) acc += s;
    } else {
        for (double s : frob2) acc += std::pow(s, 0.5 * p);
    }
    return std::pow(acc / static_cast<double>(np), 1.0 / p);
}

std::vector<double> energy_spectrum(const VectorField& v) {
    const Grid& g = v.grid();
    const int smax = static_cast<int>(std::lround(std::sqrt(static_cast<double>(g.dim)) * g.n / 2.0));
    std::vector<double> E(static_cast<std::size_t>(smax) + 1, 0.0);
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
        double e = 0.0;
        for (int i = 0; i < g.dim; ++i) e += std::norm(v[i][idx]);
        if (e == 0.0) return;
        const double kmag = std::sqrt(static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                                      static_cast<double>(kz) * kz);
        const auto shell = static_cast<std::size_t>(std::lround(kmag));
        E[shell] += 0.5 * mode_weight(g, ky, kz) * e;
    });
    return E;
}

SpectralField pseudospectral_product(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid()))
        throw std::invalid_argument("pseudospectral_product: grid mismatch");
    std::vector<double> pa = to_physical(a);
    const std::vector<double> pb = to_physical(b);
    for (std::size_t i = 0; i < pa.size(); ++i) pa[i] *= pb[i];
    return dealias_23(to_spectral(pa, a.grid()));
}

DivergenceStats divergence_stats(const VectorField& v) {
    const Grid& g = v.grid();
    DivergenceStats st;
    for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
        Complex kdotv = static_cast<double>(kx) * v[0][idx] + static_cast<double>(ky) * v[1][idx];
        double v2 = std::norm(v[0][idx]) + std::norm(v[1][idx]);
        if (g.dim == 3) {
            kdotv += static_cast<double>(kz) * v[2][idx];
            v2 += std::norm(v[2][idx]);
        }
        const double kmag = std::sqrt(static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                                      static_cast<double>(kz) * kz);
        st.max_div = std::max(st.max_div, two_pi * std::abs(kdotv));
        st.scale = std::max(st.scale, two_pi * kmag * std::sqrt(v2));
    });
    return st;
}

bool is_divergence_free(const VectorField& v, double rel_tol) {
    const DivergenceStats st = divergence_stats(v);
    if (st.scale == 0.0) return true;  // zero field
    return st.max_div <= rel_tol * st.scale;
}

double max_abs_physical(const SpectralField& f) {
    double m = 0.0;
    for (double x : to_physical(f)) m = std::max(m, std::abs(x));
    return m;
}

double max_abs_physical(const VectorField& v) {
    double m = 0.0;
    for (const auto& c : v.comp) m = std::max(m, max_abs_physical(c));
    return m;
}

}  // namespace nles
