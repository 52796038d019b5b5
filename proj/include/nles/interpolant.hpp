#pragma once

#include <span>
#include <string>

#include "nles/field.hpp"

namespace nles {

enum class InterpolantKind { fourier_truncation, volume_average };

std::string to_string(InterpolantKind k);
InterpolantKind interpolant_kind_from_string(const std::string& s);

/// Observation operator at scale h. Fourier truncation retains the modes
/// 0 < |k| < k_c = round(1/h) on the strict Euclidean shell (plus the
/// mean); volume averaging replaces the field by box means of edge
/// length h.
struct InterpolantSpec {
    InterpolantKind kind = InterpolantKind::fourier_truncation;
    double h = 1.0 / 9.0;

    static InterpolantSpec fourier(int k_c);
    static InterpolantSpec volume(double h);

    int cutoff_k() const;  // fourier: round(1/h)
    int boxes_per_axis() const;
    void validate(const Grid& grid) const;
};

SpectralField apply(const InterpolantSpec& spec, const SpectralField& f);
VectorField apply(const InterpolantSpec& spec, const VectorField& v);

/// Nonzero wave modes retained by a Fourier truncation, counted over the
/// full integer lattice within the dealiased band (mean excluded).
long observed_mode_count(const InterpolantSpec& spec, const Grid& grid);

struct InterpolantConstants {
    double c_I_hat = 0.0;  // max ||I_h phi|| / ||phi||
    double c0_hat = 0.0;   // max ||phi - I_h phi|| / (h ||grad phi||)
};

InterpolantConstants estimate_constants(const InterpolantSpec& spec,
                                        std::span<const SpectralField> samples);

/// Constant used by the theorem checks: c0 = 1 for Fourier truncation; no
/// established value for volume elements, so the same conservative constant
/// is applied there.
double theoretical_c0(const InterpolantSpec& spec);

}  // namespace nles
