#include "nles/field.hpp"

#include <cassert>

namespace nles {

namespace {

// visit stored indices of the self-conjugate plane l=0 together with the
// partner index obtained by negating the full axes
template <typename F>
void for_conjugate_pairs(const Grid& g, F&& f) {
    const int n = g.n;
    if (g.dim == 2) {
        for (int i = 0; i < n; ++i) {
            int ip = (n - i) % n;
            f(static_cast<std::size_t>(i) * g.nk(), static_cast<std::size_t>(ip) * g.nk());
        }
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                int ip = (n - i) % n;
                int jp = (n - j) % n;
                f((static_cast<std::size_t>(i) * n + j) * g.nk(),
                  (static_cast<std::size_t>(ip) * n + jp) * g.nk());
            }
    }
}

}  // namespace

void SpectralField::zero_nyquist() {
    const int n = grid_.n;
    const int nk = grid_.nk();
    const int ny = n / 2;
    if (grid_.dim == 2) {
        for (int i = 0; i < n; ++i) at(i, ny) = 0.0;
        for (int l = 0; l < nk; ++l) at(ny, l) = 0.0;
    } else {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) at(i, j, ny) = 0.0;
        for (int i = 0; i < n; ++i)
            for (int l = 0; l < nk; ++l) {
                at(i, ny, l) = 0.0;
                at(ny, i, l) = 0.0;
            }
    }
}

void SpectralField::symmetrize() {
    for_conjugate_pairs(grid_, [&](std::size_t a, std::size_t b) {
        if (a > b) return;
        if (a == b) {
            c_[a] = Complex(c_[a].real(), 0.0);
            return;
        }
        Complex avg = 0.5 * (c_[a] + std::conj(c_[b]));
        c_[a] = avg;
        c_[b] = std::conj(avg);
    });
    zero_nyquist();
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    assert(grid_ == o.grid_);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& o) {
    assert(grid_ == o.grid_);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

SpectralField& SpectralField::operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
}

SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double s, SpectralField f) { return f *= s; }

VectorField& VectorField::operator+=(const VectorField& o) {
    for (int i = 0; i < dim(); ++i) comp[static_cast<std::size_t>(i)] += o[i];
    solenoidal = solenoidal && o.solenoidal;
    return *this;
}

VectorField& VectorField::operator-=(const VectorField& o) {
    for (int i = 0; i < dim(); ++i) comp[static_cast<std::size_t>(i)] -= o[i];
    solenoidal = solenoidal && o.solenoidal;
    return *this;
}

VectorField& VectorField::operator*=(double s) {
    for (auto& c : comp) c *= s;
    return *this;
}

VectorField operator-(VectorField a, const VectorField& b) { return a -= b; }

}  // namespace nles
