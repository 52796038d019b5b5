#include "nles/fft.hpp"

#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <stdexcept>

namespace nles {

namespace {

// One cached plan pair per (dim, n). Plans are created with FFTW_UNALIGNED so
// fftw_execute_dft_* may run on arbitrary caller buffers; execution with
// new-array interfaces is thread-safe, only planning needs the lock.
struct PlanPair {
    fftw_plan r2c = nullptr;
    fftw_plan c2r = nullptr;
};

PlanPair& plans_for(const Grid& g) {
    static std::map<std::pair<int, int>, PlanPair> cache;
    static std::mutex mtx;
    std::lock_guard lock(mtx);
    auto key = std::make_pair(g.dim, g.n);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;

    std::vector<double> real(g.physical_size());
    std::vector<Complex> cplx(g.spectral_size());
    auto* cp = reinterpret_cast<fftw_complex*>(cplx.data());
    const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

    PlanPair p;
    if (g.dim == 2) {
        p.r2c = fftw_plan_dft_r2c_2d(g.n, g.n, real.data(), cp, flags);
        p.c2r = fftw_plan_dft_c2r_2d(g.n, g.n, cp, real.data(), flags);
    } else {
        p.r2c = fftw_plan_dft_r2c_3d(g.n, g.n, g.n, real.data(), cp, flags);
        p.c2r = fftw_plan_dft_c2r_3d(g.n, g.n, g.n, cp, real.data(), flags);
    }
    if (!p.r2c || !p.c2r) throw std::runtime_error("fftw plan creation failed");
    return cache.emplace(key, p).first->second;
}

}  // namespace

std::vector<double> to_physical(const SpectralField& f) {
    const Grid& g = f.grid();
    PlanPair& p = plans_for(g);
    // c2r destroys its input; work on a copy
    std::vector<Complex> work(f.coeffs().begin(), f.coeffs().end());
    std::vector<double> out(g.physical_size());
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(work.data()), out.data());
    return out;
}

SpectralField to_spectral(std::span<const double> samples, const Grid& grid) {
    if (samples.size() != grid.physical_size())
        throw std::invalid_argument("to_spectral: sample count does not match grid");
    PlanPair& p = plans_for(grid);
    std::vector<double> in(samples.begin(), samples.end());
    SpectralField f(grid);
    fftw_execute_dft_r2c(p.r2c, in.data(),
                         reinterpret_cast<fftw_complex*>(f.coeffs().data()));
    const double scale = 1.0 / static_cast<double>(grid.physical_size());
    for (auto& c : f.coeffs()) c *= scale;
    return f;
}

std::vector<std::vector<double>> to_physical(const VectorField& v) {
    std::vector<std::vector<double>> out;
    out.reserve(static_cast<std::size_t>(v.dim()));
    for (int i = 0; i < v.dim(); ++i) out.push_back(to_physical(v[i]));
    return out;
}

VectorField to_spectral(const std::vector<std::vector<double>>& comps, const Grid& grid) {
    if (static_cast<int>(comps.size()) != grid.dim)
        throw std::invalid_argument("to_spectral: component count does not match grid dim");
    VectorField v(grid);
    for (std::size_t i = 0; i < comps.size(); ++i) v.comp[i] = to_spectral(comps[i], grid);
    return v;
}

}  // namespace nles
