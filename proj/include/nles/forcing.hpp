#pragma once

#include <string>

#include "nles/field.hpp"

namespace nles {

enum class ForcingKind { zero, taylor_green_3d, kolmogorov_2d };

std::string to_string(ForcingKind k);
ForcingKind forcing_kind_from_string(const std::string& s);

struct ForcingSpec {
    ForcingKind kind = ForcingKind::zero;
    double amplitude = 1.0;
    int k_f = 4;  // Kolmogorov forcing wavenumber (2D only)

    void validate(const Grid& grid) const;
};

/// Built-in body forces: Taylor-Green in 3D,
/// amplitude*(sin(2 pi k_f y), 0) in 2D. Solenoidal and mean-free.
VectorField make_forcing(const ForcingSpec& spec, const Grid& grid);

/// Shared immutable forcing field, built once per (spec, grid); forcing is
/// time-independent so the stepper reuses it across steps.
const VectorField& cached_forcing(const ForcingSpec& spec, const Grid& grid);

}  // namespace nles
