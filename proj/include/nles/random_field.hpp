#pragma once

#include <cstdint>
#include <random>

#include "nles/field.hpp"

namespace nles {

/// Deterministic stream of doubles on top of mt19937_64 (whose raw output is
/// fully specified by the standard). Gaussian draws use an explicit
/// Box-Muller so sequences are identical across standard libraries.
class RandomStream {
  public:
    explicit RandomStream(std::uint64_t seed) : eng_(seed) {}
    double uniform();   // [0, 1)
    double gaussian();  // standard normal

  private:
    std::mt19937_64 eng_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Random isotropic solenoidal mean-free field, dealiased, scaled so the
/// kinetic energy 1/2 ||v||^2 equals `energy`. Spectrum peaks near `peak_k`.
/// Bit-identical for identical (grid, seed, energy, peak_k).
VectorField random_solenoidal_field(const Grid& grid, std::uint64_t seed, double energy,
                                    double peak_k);

}  // namespace nles
