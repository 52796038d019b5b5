#include "nles/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace nles {

namespace {

constexpr char kMagic[4] = {'N', 'L', 'E', 'S'};
constexpr std::uint32_t kVersion = 1;

void write_u32(std::ostream& os, std::uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void write_f64(std::ostream& os, double v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

std::uint32_t read_u32(std::istream& is) {
    std::uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

double read_f64(std::istream& is) {
    double v = 0;
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    return v;
}

}  // namespace

void save_checkpoint(const std::string& path, const VectorField& v, double time) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("checkpoint: cannot open for writing: " + path);
    os.write(kMagic, 4);
    write_u32(os, kVersion);
    write_u32(os, static_cast<std::uint32_t>(v.grid().dim));
    write_u32(os, static_cast<std::uint32_t>(v.grid().n));
    write_f64(os, time);
    write_u32(os, static_cast<std::uint32_t>(v.dim()));
    for (int i = 0; i < v.dim(); ++i) {
        const auto coeffs = v[i].coeffs();
        os.write(reinterpret_cast<const char*>(coeffs.data()),
                 static_cast<std::streamsize>(coeffs.size() * sizeof(Complex)));
    }
    if (!os) throw std::runtime_error("checkpoint: write failed: " + path);
}

Checkpoint load_checkpoint(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("checkpoint: cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw std::runtime_error("checkpoint: bad magic in " + path);
    const std::uint32_t version = read_u32(is);
    if (version != kVersion)
        throw std::runtime_error("checkpoint: unsupported version in " + path);
    const auto dim = static_cast<int>(read_u32(is));
    const auto n = static_cast<int>(read_u32(is));
    const double time = read_f64(is);
    const auto count = static_cast<int>(read_u32(is));
    Grid grid(dim, n);
    if (count != dim)
        throw std::runtime_error("checkpoint: field count does not match dim in " + path);
    Checkpoint ck{VectorField(grid), time};
    for (int i = 0; i < count; ++i) {
        auto coeffs = ck.v[i].coeffs();
        is.read(reinterpret_cast<char*>(coeffs.data()),
                static_cast<std::streamsize>(coeffs.size() * sizeof(Complex)));
    }
    if (!is) throw std::runtime_error("checkpoint: truncated file: " + path);
    return ck;
}

}  // namespace nles
