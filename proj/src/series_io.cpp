#include "nles/series_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace nles {

std::string format_double(double x) {
    char buf[64];
    const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
    if (ec != std::errc()) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, p);
}

namespace {

double parse_field(const std::string& token, const std::string& path, int line) {
    double x = 0.0;
    const auto [p, ec] = std::from_chars(token.data(), token.data() + token.size(), x);
    if (ec != std::errc() || p != token.data() + token.size())
        throw std::runtime_error(path + ":" + std::to_string(line) + ": bad number '" + token + "'");
    return x;
}

}  // namespace

void write_series(const ErrorSeries& series, const std::string& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("write_series: cannot open " + path);
    std::istringstream meta(series.metadata);
    std::string line;
    while (std::getline(meta, line)) os << "# " << line << "\n";
    os << "t,l2_abs,l2_rel,h1_rel,energy_residual\n";
    for (std::size_t i = 0; i < series.size(); ++i) {
        os << format_double(series.times[i]) << ',' << format_double(series.l2_abs[i]) << ','
           << format_double(series.l2_rel[i]) << ',' << format_double(series.h1_rel[i]) << ','
           << format_double(series.energy_residuals[i]) << "\n";
    }
    if (!os) throw std::runtime_error("write_series: write failed for " + path);
}

ErrorSeries read_series(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::runtime_error("read_series: cannot open " + path);
    ErrorSeries s;
    std::string line;
    std::ostringstream meta;
    bool header_seen = false;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::string m = line.substr(1);
            if (!m.empty() && m[0] == ' ') m.erase(0, 1);
            meta << m << "\n";
            continue;
        }
        if (!header_seen) {
            if (line != "t,l2_abs,l2_rel,h1_rel,energy_residual")
                throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                         ": unexpected header '" + line + "'");
            header_seen = true;
            continue;
        }
        std::vector<std::string> tok;
        std::size_t start = 0;
        while (true) {
            const auto comma = line.find(',', start);
            tok.push_back(line.substr(start, comma - start));
            if (comma == std::string::npos) break;
            start = comma + 1;
        }
        if (tok.size() != 5)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected 5 columns");
        s.times.push_back(parse_field(tok[0], path, lineno));
        s.l2_abs.push_back(parse_field(tok[1], path, lineno));
        s.l2_rel.push_back(parse_field(tok[2], path, lineno));
        s.h1_rel.push_back(parse_field(tok[3], path, lineno));
        s.energy_residuals.push_back(parse_field(tok[4], path, lineno));
    }
    s.metadata = meta.str();
    return s;
}

void write_spectrum(const std::vector<double>& spectrum, const std::string& path) {
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw std::runtime_error("write_spectrum: cannot open " + path);
    os << "k,energy\n";
    for (std::size_t k = 0; k < spectrum.size(); ++k)
        os << k << ',' << format_double(spectrum[k]) << "\n";
    if (!os) throw std::runtime_error("write_spectrum: write failed for " + path);
}

}  // namespace nles
