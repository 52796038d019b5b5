#include "nles/forcing.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "nles/fft.hpp"
#include "nles/ops.hpp"

namespace nles {

std::string to_string(ForcingKind k) {
    switch (k) {
        case ForcingKind::zero: return "zero";
        case ForcingKind::taylor_green_3d: return "taylor_green";
        case ForcingKind::kolmogorov_2d: return "kolmogorov";
    }
    return "zero";
}

ForcingKind forcing_kind_from_string(const std::string& s) {
    if (s == "zero") return ForcingKind::zero;
    if (s == "taylor_green") return ForcingKind::taylor_green_3d;
    if (s == "kolmogorov") return ForcingKind::kolmogorov_2d;
    throw std::invalid_argument("forcing: unknown kind '" + s +
                                "' (expected zero|taylor_green|kolmogorov)");
}

void ForcingSpec::validate(const Grid& grid) const {
    if (!std::isfinite(amplitude)) throw std::invalid_argument("forcing: amplitude must be finite");
    if (kind == ForcingKind::taylor_green_3d && grid.dim != 3)
        throw std::invalid_argument("forcing: taylor_green requires a 3D grid");
    if (kind == ForcingKind::kolmogorov_2d) {
        if (grid.dim != 2) throw std::invalid_argument("forcing: kolmogorov requires a 2D grid");
        if (k_f < 1) throw std::invalid_argument("forcing: k_f must be >= 1");
        if (k_f > grid.dealias_limit())
            throw std::invalid_argument("forcing: k_f exceeds the dealiased band");
    }
}

VectorField make_forcing(const ForcingSpec& spec, const Grid& grid) {
    spec.validate(grid);
    VectorField f(grid, /*solenoidal=*/true);
    if (spec.kind == ForcingKind::zero) return f;

    const int n = grid.n;
    const double A = spec.amplitude;
    if (spec.kind == ForcingKind::kolmogorov_2d) {
        std::vector<double> f0(grid.physical_size());
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                const double y = static_cast<double>(j) / n;
                f0[static_cast<std::size_t>(i) * n + j] = A * std::sin(2.0 * pi * spec.k_f * y);
            }
        }
        f[0] = to_spectral(f0, grid);
        return f;
    }

    // Taylor-Green: (sin cos cos, -cos sin cos, 0) on 2*pi*(x,y,z)
    std::vector<double> f0(grid.physical_size()), f1(grid.physical_size());
    for (int i = 0; i < n; ++i) {
        const double x = static_cast<double>(i) / n;
        for (int j = 0; j < n; ++j) {
            const double y = static_cast<double>(j) / n;
            for (int l = 0; l < n; ++l) {
                const double z = static_cast<double>(l) / n;
                const std::size_t idx = (static_cast<std::size_t>(i) * n + j) * n + l;
                const double cz = std::cos(2.0 * pi * z);
                f0[idx] = A * std::sin(2.0 * pi * x) * std::cos(2.0 * pi * y) * cz;
                f1[idx] = -A * std::cos(2.0 * pi * x) * std::sin(2.0 * pi * y) * cz;
            }
        }
    }
    f[0] = to_spectral(f0, grid);
    f[1] = to_spectral(f1, grid);
    return f;
}

const VectorField& cached_forcing(const ForcingSpec& spec, const Grid& grid) {
    using Key = std::tuple<int, double, int, int, int>;
    static std::map<Key, VectorField> cache;
    static std::mutex mtx;
    const Key key{static_cast<int>(spec.kind), spec.amplitude, spec.k_f, grid.dim, grid.n};
    std::lock_guard lock(mtx);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make_forcing(spec, grid)).first;
    return it->second;
}

}  // namespace nles
