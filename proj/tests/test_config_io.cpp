#include <cmath>
#include <cstdio>
#include <string>

#include "doctest.h"
#include "nles/experiment.hpp"
#include "nles/series_io.hpp"

using namespace nles;

TEST_CASE("parse: empty document applies the scaled defaults") {
    const TwinExperiment exp = parse_experiment("");
    CHECK(exp.grid.dim == 2);
    CHECK(exp.grid.n == 128);
    CHECK(exp.nudged.model == Model::ladyzhenskaya);
    CHECK(exp.nudged.mu == 30.0);
    CHECK(exp.nudged.p == 3.0);
    CHECK(exp.nudged.nu_bar == doctest::Approx((0.17 / 128) * (0.17 / 128)).epsilon(1e-14));
    CHECK(exp.nudged.interpolant.cutoff_k() == 9);
    CHECK(exp.reference.model == Model::nse);
    CHECK(exp.reference.mu == 0.0);
    CHECK(exp.reference.forcing.kind == ForcingKind::kolmogorov_2d);
}

TEST_CASE("parse: empty [nudged] section still gets mu = 30, p = 3, C_s scaling") {
    const TwinExperiment exp = parse_experiment("[grid]\nn = 64\n\n[nudged]\n");
    CHECK(exp.nudged.mu == 30.0);
    CHECK(exp.nudged.p == 3.0);
    CHECK(exp.nudged.nu_bar == doctest::Approx((0.17 / 64) * (0.17 / 64)).epsilon(1e-14));
}

TEST_CASE("parse: 3D grids default to Taylor-Green forcing") {
    const TwinExperiment exp = parse_experiment("[grid]\ndim = 3\nn = 16\n");
    CHECK(exp.reference.forcing.kind == ForcingKind::taylor_green_3d);
}

TEST_CASE("parse: invariant violations name the field") {
    CHECK_THROWS_WITH_AS((void)parse_experiment("[nudged]\ncfl = 1.5\n"),
                         "experiment validation: cfl must be in (0,1]", std::invalid_argument);
}

TEST_CASE("parse: unknown keys are rejected with a suggestion") {
    try {
        (void)parse_experiment("[nudged]\nmue = 30\n");
        FAIL("expected an exception");
    } catch (const std::invalid_argument& e) {
        const std::string msg = e.what();
        CHECK(msg.find("unknown key 'mue'") != std::string::npos);
        CHECK(msg.find("did you mean 'mu'") != std::string::npos);
    }
    CHECK_THROWS_AS((void)parse_experiment("[nudge]\nmu = 30\n"), std::invalid_argument);
}

TEST_CASE("parse: cs and nu_bar are mutually exclusive; cs scales by the grid") {
    const TwinExperiment exp = parse_experiment("[grid]\nn = 64\n\n[nudged]\ncs = 0.2\n");
    CHECK(exp.nudged.nu_bar == doctest::Approx((0.2 / 64) * (0.2 / 64)).epsilon(1e-14));
    CHECK_THROWS_AS((void)parse_experiment("[nudged]\ncs = 0.2\nnu_bar = 1e-6\n"),
                    std::invalid_argument);
}

TEST_CASE("parse: volume observation requires h; fourier accepts h or k_c") {
    CHECK_THROWS_AS((void)parse_experiment("[observation]\ninterpolant = volume\n"),
                    std::invalid_argument);
    const TwinExperiment v =
        parse_experiment("[observation]\ninterpolant = volume\nh = 0.125\n");
    CHECK(v.nudged.interpolant.kind == InterpolantKind::volume_average);
    const TwinExperiment f = parse_experiment("[observation]\nh = 0.2\n");
    CHECK(f.nudged.interpolant.cutoff_k() == 5);
}

TEST_CASE("parse/serialize: canonical round trip is a fixed point") {
    const std::string doc =
        "[grid]\ndim = 2\nn = 64\n\n"
        "[reference]\nnu = 1e-2\nforcing = kolmogorov\nk_f = 3\n\n"
        "[nudged]\nmu = 12.5\ncs = 0.21\np = 3\n\n"
        "[observation]\nk_c = 7\n\n"
        "[harness]\nt_end = 4\nseed = 9\nrecord_interval = 0.25\nv0 = reference\n";
    const std::string s1 = serialize_experiment(parse_experiment(doc));
    const std::string s2 = serialize_experiment(parse_experiment(s1));
    CHECK(s1 == s2);
    const TwinExperiment exp = parse_experiment(s1);
    CHECK(exp.nudged.mu == 12.5);
    CHECK(exp.seed == 9);
    CHECK(exp.v0 == TwinExperiment::V0::reference);
}

TEST_CASE("series io: full-precision round trip and deterministic bytes") {
    ErrorSeries s;
    s.metadata = "alpha\nbeta";
    const std::vector<double> vals = {0.0,           1.0 / 3.0,        -2.5e-17,
                                      6.02214076e23, 0.1 + 0.2,        1e-300,
                                      pi,            -0.49999999999999994};
    for (std::size_t i = 0; i < vals.size(); ++i) {
        s.times.push_back(static_cast<double>(i) + 0.5);
        s.l2_abs.push_back(vals[i]);
        s.l2_rel.push_back(vals[i] * 2.0);
        s.h1_rel.push_back(vals[i] / 3.0);
        s.energy_residuals.push_back(vals[i] * vals[i]);
    }
    const std::string path = "/tmp/nles_test_series.csv";
    write_series(s, path);
    const ErrorSeries r = read_series(path);
    REQUIRE(r.size() == s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        CHECK(r.times[i] == s.times[i]);
        CHECK(r.l2_abs[i] == s.l2_abs[i]);
        CHECK(r.l2_rel[i] == s.l2_rel[i]);
        CHECK(r.h1_rel[i] == s.h1_rel[i]);
        CHECK(r.energy_residuals[i] == s.energy_residuals[i]);
    }
    CHECK(r.metadata == "alpha\nbeta\n");

    const std::string path2 = "/tmp/nles_test_series2.csv";
    write_series(s, path2);
    auto slurp = [](const std::string& p) {
        std::FILE* fp = std::fopen(p.c_str(), "rb");
        REQUIRE(fp != nullptr);
        std::string out;
        char buf[4096];
        std::size_t got;
        while ((got = std::fread(buf, 1, sizeof buf, fp)) > 0) out.append(buf, got);
        std::fclose(fp);
        return out;
    };
    CHECK(slurp(path) == slurp(path2));
    std::remove(path.c_str());
    std::remove(path2.c_str());
}

TEST_CASE("series io: spectrum of a zero field writes zero-energy rows") {
    const std::string path = "/tmp/nles_test_spectrum.csv";
    write_spectrum(std::vector<double>(5, 0.0), path);
    std::FILE* fp = std::fopen(path.c_str(), "rb");
    REQUIRE(fp != nullptr);
    char buf[256];
    REQUIRE(std::fgets(buf, sizeof buf, fp) != nullptr);
    CHECK(std::string(buf) == "k,energy\n");
    int rows = 0;
    while (std::fgets(buf, sizeof buf, fp) != nullptr) {
        ++rows;
        const std::string line(buf);
        CHECK(line.substr(line.find(',') + 1) == "0\n");
    }
    CHECK(rows == 5);
    std::fclose(fp);
    std::remove(path.c_str());
}

TEST_CASE("series io: IO failures carry the path") {
    ErrorSeries s;
    s.times = {0.0};
    s.l2_abs = {1.0};
    s.l2_rel = {1.0};
    s.h1_rel = {1.0};
    s.energy_residuals = {0.0};
    try {
        write_series(s, "/nonexistent_dir_nles/x.csv");
        FAIL("expected an exception");
    } catch (const std::runtime_error& e) {
        CHECK(std::string(e.what()).find("/nonexistent_dir_nles/x.csv") != std::string::npos);
    }
}
