#pragma once

#include <string>
#include <vector>

#include "nles/harness.hpp"

namespace nles {

/// Shortest representation that round-trips the exact f64 value.
std::string format_double(double x);

/// CSV with '#'-prefixed metadata lines, header
/// t,l2_abs,l2_rel,h1_rel,energy_residual, one row per record.
void write_series(const ErrorSeries& series, const std::string& path);
ErrorSeries read_series(const std::string& path);

/// CSV with header k,energy, one row per shell.
void write_spectrum(const std::vector<double>& spectrum, const std::string& path);

}  // namespace nles
