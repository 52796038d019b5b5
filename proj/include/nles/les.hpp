#pragma once

#include <vector>

#include "nles/field.hpp"

namespace nles {

/// Dealiased spectral (v.grad)v in divergence form, div(v (x) v), computed
/// pseudospectrally. Input must be solenoidal and dealiased; the result is
/// not projected (the caller applies the Leray projection).
VectorField advection(const VectorField& v);

/// div( nu_bar |grad v|_F^(p-2) grad v ), the Ladyzhenskaya stress
/// divergence: gradient tensor spectrally, the nonlinear factor pointwise in
/// physical space, divergence spectrally, dealiased.
VectorField ladyzhenskaya_divergence(const VectorField& v, double p, double nu_bar);

/// Pointwise coefficient a(x) = |grad v_old(x)|_F^(p-2) >= 0 on the physical
/// grid, the lagged factor of the linearly implicit scheme. For p = 2 this
/// is identically 1.
std::vector<double> lagged_les_coefficient(const VectorField& v_old, double p);

/// div( nu_bar a(x) grad v ) with a frozen coefficient, the operator applied
/// inside each Picard sweep of the time stepper.
VectorField les_divergence_with_coefficient(const VectorField& v, const std::vector<double>& a,
                                            double nu_bar);

}  // namespace nles
