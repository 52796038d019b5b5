#pragma once

#include <complex>
#include <span>
#include <vector>

#include "nles/grid.hpp"

namespace nles {

using Complex = std::complex<double>;

/// Fourier coefficients of a real scalar field on a periodic grid, stored in
/// real-to-complex layout: full index range on the leading axes, indices
/// 0..n/2 on the last. Coefficients are normalized Fourier-series
/// coefficients, f(x) = sum_k c(k) exp(2*pi*i k.x), so a unit-amplitude
/// cosine mode carries |c| = 1/2.
class SpectralField {
  public:
    SpectralField() = default;
    explicit SpectralField(const Grid& g) : grid_(g), c_(g.spectral_size()) {}

    const Grid& grid() const { return grid_; }
    std::span<Complex> coeffs() { return c_; }
    std::span<const Complex> coeffs() const { return c_; }
    std::size_t size() const { return c_.size(); }

    // stored-lattice indexing; i, j full axes, l the halved last axis
    Complex& at(int i, int l) { return c_[static_cast<std::size_t>(i) * grid_.nk() + l]; }
    Complex at(int i, int l) const { return c_[static_cast<std::size_t>(i) * grid_.nk() + l]; }
    Complex& at(int i, int j, int l) {
        return c_[(static_cast<std::size_t>(i) * grid_.n + j) * grid_.nk() + l];
    }
    Complex at(int i, int j, int l) const {
        return c_[(static_cast<std::size_t>(i) * grid_.n + j) * grid_.nk() + l];
    }

    Complex& operator[](std::size_t flat) { return c_[flat]; }
    Complex operator[](std::size_t flat) const { return c_[flat]; }

    /// Zero every mode with any |k_j| = n/2; the Nyquist mode has no
    /// conjugate partner and would break derivative antisymmetry.
    void zero_nyquist();

    /// Enforce Hermitian symmetry on the self-conjugate last-axis planes by
    /// averaging conjugate partners, then zero Nyquist and the imaginary
    /// part of the mean. Needed after direct spectral-space construction;
    /// transforms of real data already satisfy it.
    void symmetrize();

    void set_mean(Complex m) { c_[0] = m; }
    Complex mean() const { return c_[0]; }

    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double s);

  private:
    Grid grid_{};
    std::vector<Complex> c_;
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double s, SpectralField f);

/// dim spectral components sharing one grid. `solenoidal` is a declared
/// property set by the operations that guarantee it (projection, forcing
/// construction); is_divergence_free() checks the actual invariant.
struct VectorField {
    std::vector<SpectralField> comp;
    bool solenoidal = false;

    VectorField() = default;
    explicit VectorField(const Grid& g, bool solenoidal_ = false)
        : comp(g.dim, SpectralField(g)), solenoidal(solenoidal_) {}

    const Grid& grid() const { return comp.at(0).grid(); }
    int dim() const { return static_cast<int>(comp.size()); }

    SpectralField& operator[](int i) { return comp[static_cast<std::size_t>(i)]; }
    const SpectralField& operator[](int i) const { return comp[static_cast<std::size_t>(i)]; }

    VectorField& operator+=(const VectorField& o);
    VectorField& operator-=(const VectorField& o);
    VectorField& operator*=(double s);
};

VectorField operator-(VectorField a, const VectorField& b);

}  // namespace nles
