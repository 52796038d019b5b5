#pragma once

#include <span>
#include <vector>

#include "nles/field.hpp"

namespace nles {

/// Inverse transform to physical space, row-major n^dim samples.
std::vector<double> to_physical(const SpectralField& f);

/// Forward transform of real samples (row-major, n^dim values) into
/// normalized Fourier coefficients. Round trip is identity to ~1e-15.
SpectralField to_spectral(std::span<const double> g, const Grid& grid);

std::vector<std::vector<double>> to_physical(const VectorField& v);
VectorField to_spectral(const std::vector<std::vector<double>>& comps, const Grid& grid);

}  // namespace nles
