#pragma once

#include <string>

#include "nles/field.hpp"

namespace nles {

struct Checkpoint {
    VectorField v;
    double time = 0.0;
};

/// Binary checkpoint: magic "NLES", version u32, dim u32, n u32, time f64,
/// field count u32, then one raw little-endian block of interleaved re/im
/// f64 coefficients per component. Round trips bit-exactly.
void save_checkpoint(const std::string& path, const VectorField& v, double time);
Checkpoint load_checkpoint(const std::string& path);

}  // namespace nles
