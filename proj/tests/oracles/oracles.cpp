#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace nles::oracle {

FullLattice::FullLattice(const SpectralField& f) : grid_(f.grid()) {
    const int n = grid_.n;
    std::size_t total = 1;
    for (int d = 0; d < grid_.dim; ++d) total *= static_cast<std::size_t>(n);
    c_.assign(total, Complex(0.0, 0.0));
    const int half = n / 2;
    auto wrap = [n](int k) { return (k % n + n) % n; };
    for (int kx = -half; kx < half; ++kx) {
        for (int ky = -half; ky < half; ++ky) {
            if (grid_.dim == 2) {
                // stored half axis is y
                Complex v;
                if (ky >= 0)
                    v = f.at(wrap(kx), ky);
                else
                    v = std::conj(f.at(wrap(-kx), -ky));
                c_[static_cast<std::size_t>(wrap(kx)) * n + wrap(ky)] = v;
            } else {
                for (int kz = -half; kz < half; ++kz) {
                    Complex v;
                    if (kz >= 0)
                        v = f.at(wrap(kx), wrap(ky), kz);
                    else
                        v = std::conj(f.at(wrap(-kx), wrap(-ky), -kz));
                    c_[(static_cast<std::size_t>(wrap(kx)) * n + wrap(ky)) * n + wrap(kz)] = v;
                }
            }
        }
    }
}

Complex FullLattice::at(int kx, int ky, int kz) const {
    const int n = grid_.n;
    const int half = n / 2;
    if (kx < -half || kx >= half || ky < -half || ky >= half) return 0.0;
    if (grid_.dim == 3 && (kz < -half || kz >= half)) return 0.0;
    auto wrap = [n](int k) { return (k % n + n) % n; };
    if (grid_.dim == 2) return c_[static_cast<std::size_t>(wrap(kx)) * n + wrap(ky)];
    return c_[(static_cast<std::size_t>(wrap(kx)) * n + wrap(ky)) * n + wrap(kz)];
}

SpectralField convolve_dealiased(const SpectralField& a, const SpectralField& b) {
    if (!(a.grid() == b.grid())) throw std::invalid_argument("convolve: grid mismatch");
    const Grid& g = a.grid();
    const FullLattice fa(a), fb(b);
    const int n = g.n;
    const int half = n / 2;
    const int kd = g.dealias_limit();
    SpectralField out(g);
    auto wrap = [n](int k) { return (k % n + n) % n; };

    auto conv_at = [&](int ox, int oy, int oz) {
        Complex s(0.0, 0.0);
        for (int kx = -half; kx < half; ++kx)
            for (int ky = -half; ky < half; ++ky) {
                if (g.dim == 2) {
                    s += fa.at(kx, ky) * fb.at(ox - kx, oy - ky);
                } else {
                    for (int kz = -half; kz < half; ++kz)
                        s += fa.at(kx, ky, kz) * fb.at(ox - kx, oy - ky, oz - kz);
                }
            }
        return s;
    };

    if (g.dim == 2) {
        for (int ox = -kd; ox <= kd; ++ox)
            for (int oy = 0; oy <= kd; ++oy) out.at(wrap(ox), oy) = conv_at(ox, oy, 0);
    } else {
        for (int ox = -kd; ox <= kd; ++ox)
            for (int oy = -kd; oy <= kd; ++oy)
                for (int oz = 0; oz <= kd; ++oz)
                    out.at(wrap(ox), wrap(oy), oz) = conv_at(ox, oy, oz);
    }
    return out;
}

VectorField advection_by_convolution(const VectorField& v) {
    const Grid& g = v.grid();
    const int d = g.dim;
    std::vector<std::vector<SpectralField>> w(static_cast<std::size_t>(d),
                                              std::vector<SpectralField>(static_cast<std::size_t>(d)));
    for (int i = 0; i < d; ++i)
        for (int j = i; j < d; ++j) {
            w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                convolve_dealiased(v[i], v[j]);
            if (j != i)
                w[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
                    w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        }
    VectorField out(g);
    const Complex I_unit(0.0, 1.0);
    const int n = g.n, nk = g.nk();
    auto emit = [&](int i, std::size_t idx, double kx, double ky, double kz) {
        const double kk[3] = {kx, ky, kz};
        Complex s(0.0, 0.0);
        for (int j = 0; j < d; ++j)
            s += kk[j] * w[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)][idx];
        out[i][idx] = I_unit * 2.0 * pi * s;
    };
    std::size_t idx = 0;
    if (d == 2) {
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < nk; ++l, ++idx)
                for (int c = 0; c < d; ++c) emit(c, idx, g.wavenumber(i), l, 0);
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < nk; ++l, ++idx)
                    for (int c = 0; c < d; ++c) emit(c, idx, g.wavenumber(i), g.wavenumber(j), l);
    }
    return out;
}

double evaluate_series(const SpectralField& f, const std::vector<double>& x) {
    const Grid& g = f.grid();
    const int n = g.n, nk = g.nk();
    double acc = 0.0;
    auto add_mode = [&](Complex c, double kx, double ky, double kz, bool doubled) {
        const double phase = 2.0 * pi * (kx * x[0] + ky * x[1] + (g.dim == 3 ? kz * x[2] : 0.0));
        const double term = c.real() * std::cos(phase) - c.imag() * std::sin(phase);
        acc += doubled ? 2.0 * term : term;
    };
    if (g.dim == 2) {
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < nk; ++l)
                add_mode(f.at(i, l), g.wavenumber(i), l, 0, l != 0 && l != n / 2);
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < nk; ++l)
                    add_mode(f.at(i, j, l), g.wavenumber(i), g.wavenumber(j), l,
                             l != 0 && l != n / 2);
    }
    return acc;
}

VectorField taylor_green_2d(const Grid& g, double amplitude, double nu, double t) {
    if (g.dim != 2) throw std::invalid_argument("taylor_green_2d: 2D only");
    const double A = amplitude * std::exp(-8.0 * pi * pi * nu * t);
    const int n = g.n;
    // transform-free: the four active modes placed directly,
    //   sin(2 pi x) cos(2 pi y):  c(kx,ky) = -i kx / 4 on (kx,ky) = (+-1,+-1)
    //  -cos(2 pi x) sin(2 pi y):  c(kx,ky) = +i ky / 4
    // stored half axis keeps ky = +1 only
    VectorField out(g, /*solenoidal=*/true);
    auto wrap = [n](int k) { return (k % n + n) % n; };
    for (int kx : {-1, 1}) {
        out[0].at(wrap(kx), 1) = Complex(0.0, -0.25 * kx) * A;
        out[1].at(wrap(kx), 1) = Complex(0.0, 0.25) * A;
    }
    return out;
}

double fourier_tail_ratio(const SpectralField& phi, int k_c) {
    const Grid& g = phi.grid();
    const int n = g.n, nk = g.nk();
    const long kc2 = static_cast<long>(k_c) * k_c;
    double tail = 0.0, grad = 0.0;
    auto add = [&](Complex c, long kx, long ky, long kz, bool doubled) {
        const long k2 = kx * kx + ky * ky + kz * kz;
        const double w = doubled ? 2.0 : 1.0;
        const double e = w * std::norm(c);
        if (k2 >= kc2) tail += e;  // modes removed by the strict shell
        grad += 4.0 * pi * pi * static_cast<double>(k2) * e;
    };
    if (g.dim == 2) {
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < nk; ++l)
                add(phi.at(i, l), g.wavenumber(i), l, 0, l != 0 && l != n / 2);
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int l = 0; l < nk; ++l)
                    add(phi.at(i, j, l), g.wavenumber(i), g.wavenumber(j), l,
                        l != 0 && l != n / 2);
    }
    if (grad == 0.0) throw std::invalid_argument("fourier_tail_ratio: zero gradient");
    const double h = 1.0 / k_c;
    return std::sqrt(tail) / (h * std::sqrt(grad));
}

}  // namespace nles::oracle
