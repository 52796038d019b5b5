#pragma once

#include <string>

#include "nles/harness.hpp"

namespace nles {

/// Parse a sectioned experiment file ([grid], [reference], [nudged],
/// [observation], [harness]; key = value lines, '#' comments). Absent keys
/// take the defaults of the 3D reference setup scaled to the grid
/// (C_s = 0.17 with delta = 1/n, mu = 30, k_c = 9, p = 3). Unknown keys are
/// rejected with a suggestion; invariant violations name the field.
TwinExperiment parse_experiment(const std::string& text);

/// Canonical text form; parse(serialize(parse(doc))) == parse(doc).
std::string serialize_experiment(const TwinExperiment& exp);

}  // namespace nles
