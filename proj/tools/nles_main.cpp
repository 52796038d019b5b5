#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "nles/checkpoint.hpp"
#include "nles/experiment.hpp"
#include "nles/fft.hpp"
#include "nles/les.hpp"
#include "nles/ops.hpp"
#include "nles/random_field.hpp"
#include "nles/series_io.hpp"
#include "nles/version.hpp"
#include "oracles.hpp"

using namespace nles;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 1;
constexpr int kExitDivergence = 2;

std::string slurp(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw std::invalid_argument("cannot open experiment file: " + path);
    std::ostringstream os;
    os << is.rdbuf();
    return os.str();
}

struct Overrides {
    std::uint64_t seed = 0;
    bool have_seed = false;
    double t_end = 0.0;
    bool have_t_end = false;
    int resolution = 0;
    bool have_resolution = false;
};

void add_override_flags(CLI::App* cmd, Overrides& ov) {
    cmd->add_option("--seed", ov.seed, "override the experiment seed")
        ->each([&](const std::string&) { ov.have_seed = true; });
    cmd->add_option("--t-end", ov.t_end, "override the end time")
        ->each([&](const std::string&) { ov.have_t_end = true; });
    cmd->add_option("--resolution", ov.resolution, "override the grid resolution n")
        ->each([&](const std::string&) { ov.have_resolution = true; });
}

// overrides are appended as trailing sections; within a document the last
// occurrence of a key wins, so they flow through the normal validation path
TwinExperiment load_experiment(const std::string& path, const Overrides& ov) {
    std::string text = slurp(path);
    std::ostringstream extra;
    if (ov.have_resolution) extra << "\n[grid]\nn = " << ov.resolution << "\n";
    if (ov.have_seed) extra << "\n[harness]\nseed = " << ov.seed << "\n";
    if (ov.have_t_end) extra << "\n[harness]\nt_end = " << format_double(ov.t_end) << "\n";
    return parse_experiment(text + extra.str());
}

std::string metadata_for(const TwinExperiment& exp) {
    std::ostringstream os;
    os << kVersion << "\n" << serialize_experiment(exp);
    return os.str();
}

int effective_jobs(int jobs) {
    if (const char* cap = std::getenv("NLES_THREADS")) {
        const int c = std::atoi(cap);
        if (c >= 1) jobs = std::min(jobs, c);
    }
    return std::max(1, jobs);
}

std::filesystem::path prepare_out(const std::string& out) {
    std::filesystem::path dir(out);
    std::filesystem::create_directories(dir);
    return dir;
}

int cmd_dns(const std::string& file, const Overrides& ov, const std::string& out,
            double ckpt_interval, const std::string& resume) {
    const TwinExperiment exp = load_experiment(file, ov);
    const auto dir = prepare_out(out);
    SolverConfig cfg = exp.reference;
    cfg.mu = 0.0;

    SimState st;
    if (resume.empty()) {
        std::cout << "spin-up: " << format_double(exp.spinup_time) << " time units\n";
        st = spinup_reference(exp);
    } else {
        const Checkpoint ck = load_checkpoint(resume);
        st = SimState(ck.v, ck.time);
        std::cout << "resumed from " << resume << " at t = " << format_double(st.t) << "\n";
    }

    double next_ckpt = ckpt_interval > 0.0 ? st.t + ckpt_interval : cfg.t_end + 1.0;
    while (st.t < cfg.t_end - 1e-12) {
        double dt = compute_dt(st, cfg);
        dt = std::min(dt, cfg.t_end - st.t);
        st = step(st, cfg, dt, nullptr);
        if (!std::isfinite(l2_norm(st.v)))
            throw DivergenceError("dns run diverged at t = " + std::to_string(st.t), st.t,
                                  st.step_count);
        if (st.t >= next_ckpt - 1e-12) {
            const auto path = dir / ("dns_t" + format_double(st.t) + ".ckpt");
            save_checkpoint(path.string(), st.v, st.t);
            std::cout << "checkpoint: " << path.string() << "\n";
            next_ckpt += ckpt_interval;
        }
    }
    save_checkpoint((dir / "dns_final.ckpt").string(), st.v, st.t);
    write_spectrum(energy_spectrum(st.v), (dir / "dns_spectrum.csv").string());
    const double e = l2_norm(st.v);
    std::cout << "final t = " << format_double(st.t) << ", kinetic energy = "
              << format_double(0.5 * e * e) << ", steps = " << st.step_count << "\n";
    std::cout << "wrote " << (dir / "dns_final.ckpt").string() << " and "
              << (dir / "dns_spectrum.csv").string() << "\n";
    return kExitOk;
}

int cmd_twin(const std::string& file, const Overrides& ov, const std::string& out) {
    const TwinExperiment exp = load_experiment(file, ov);
    const auto dir = prepare_out(out);
    ErrorSeries series = run_twin(exp);
    series.metadata = metadata_for(exp);
    const auto path = dir / "twin_series.csv";
    write_series(series, path.string());
    std::cout << "records: " << series.size() << ", final relative L2 error = "
              << format_double(series.l2_rel.back()) << "\n";
    std::cout << "wrote " << path.string() << "\n";
    return kExitOk;
}

int cmd_sweep(const std::string& file, const Overrides& ov, const std::string& out,
              std::vector<double> nu_bars, int jobs) {
    const TwinExperiment exp = load_experiment(file, ov);
    const auto dir = prepare_out(out);
    const SweepResult res = nu_bar_sweep(exp, nu_bars, effective_jobs(jobs));
    for (std::size_t i = 0; i < res.nu_bars.size(); ++i) {
        ErrorSeries s = res.series[i];
        TwinExperiment member = exp;
        member.nudged.nu_bar = res.nu_bars[i];
        s.metadata = metadata_for(member);
        write_series(s, (dir / ("sweep_" + format_double(res.nu_bars[i]) + ".csv")).string());
    }
    const auto summary = dir / "sweep_summary.csv";
    {
        std::ofstream os(summary);
        if (!os) throw std::runtime_error("cannot open " + summary.string());
        os << "# " << kVersion << "\n";
        os << "# fitted slope of log(plateau) vs log(nu_bar): " << format_double(res.slope)
           << "\n";
        os << "nu_bar,plateau_l2\n";
        for (std::size_t i = 0; i < res.nu_bars.size(); ++i)
            os << format_double(res.nu_bars[i]) << ',' << format_double(res.plateaus[i]) << "\n";
    }
    std::cout << "plateau scaling slope = " << format_double(res.slope)
              << " (theory: 0.5)\nwrote " << summary.string() << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& file, const Overrides& ov) {
    const TwinExperiment exp = load_experiment(file, ov);
    const VectorField f = make_forcing(exp.nudged.forcing, exp.grid);
    const double G = grashof(f, exp.nudged.nu);
    std::cout << "Grashof number G = " << format_double(G) << "\n";

    const DaConditionReport rep = validate_da_conditions(exp.nudged, G, exp.grid);
    if (!rep.applicable) {
        for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";
        return kExitOk;
    }
    for (const auto& c : rep.conditions) {
        std::cout << (c.satisfied ? "  OK " : "WARN ") << c.name << ": " << c.expression
                  << "  [lhs = " << format_double(c.lhs) << ", rhs = " << format_double(c.rhs)
                  << "]\n";
    }
    for (const auto& n : rep.notes) std::cout << "note: " << n << "\n";

    std::vector<SpectralField> samples;
    RandomStream rng(exp.seed);
    for (int s = 0; s < 20; ++s) {
        VectorField v = random_solenoidal_field(exp.grid, exp.seed + 1000 + static_cast<std::uint64_t>(s),
                                                1.0, exp.spinup_peak_k);
        samples.push_back(v[0]);
    }
    const InterpolantConstants ic = estimate_constants(exp.nudged.interpolant, samples);
    std::cout << "interpolant estimates over 20 random fields: c_I <= "
              << format_double(ic.c_I_hat) << ", c0 <= " << format_double(ic.c0_hat) << "\n";
    return kExitOk;
}

bool report(const char* name, bool ok) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << name << "\n";
    return ok;
}

int cmd_oracle(const std::string& suite) {
    bool all = true;
    const bool want_all = suite == "all";

    if (want_all || suite == "convolution") {
        bool ok = true;
        for (const Grid g : {Grid(2, 8), Grid(3, 8)}) {
            const VectorField v = random_solenoidal_field(g, 2024, 0.5, 2.0);
            const VectorField fast = advection(v);
            const VectorField slow = oracle::advection_by_convolution(v);
            ok = ok && l2_norm(fast - slow) < 1e-12 * std::max(1.0, l2_norm(slow));
        }
        all = report("convolution: dealiased advection vs brute-force convolution", ok) && all;
    }

    if (want_all || suite == "taylor_green") {
        const Grid g(2, 32);
        const double nu = 0.05, T = 0.25;
        auto decay_error = [&](double dt) {
            SolverConfig cfg;
            cfg.model = Model::nse;
            cfg.nu = nu;
            cfg.forcing.kind = ForcingKind::zero;
            cfg.dt_min = cfg.dt_max = dt;
            SimState st(oracle::taylor_green_2d(g, 1.0, nu, 0.0), 0.0);
            const long steps = std::lround(T / dt);
            for (long i = 0; i < steps; ++i) st = step(st, cfg, dt, nullptr);
            const VectorField exact = oracle::taylor_green_2d(g, 1.0, nu, T);
            return l2_norm(st.v - exact) / l2_norm(exact);
        };
        const double order = std::log2(decay_error(0.01) / decay_error(0.005));
        all = report("taylor_green: first-order viscous decay (order in [0.8, 1.2])",
                     order > 0.8 && order < 1.2) &&
              all;
    }

    if (want_all || suite == "interpolant") {
        const Grid g(2, 32);
        const int k_c = 5;
        const InterpolantSpec spec = InterpolantSpec::fourier(k_c);
        bool ok = true;
        for (std::uint64_t s = 0; s < 100; ++s) {
            const SpectralField phi = random_solenoidal_field(g, 3000 + s, 1.0, 5.0)[0];
            const SpectralField ip = apply(spec, phi);
            ok = ok && l2_norm(ip) <= l2_norm(phi);
            ok = ok && l2_norm(phi - ip) <= spec.h * h1_seminorm(phi);
            ok = ok && oracle::fourier_tail_ratio(phi, k_c) <= 1.0 / (2.0 * pi) + 1e-10;
        }
        all = report("interpolant: tail-sum certificates (c_I <= 1, c0 <= 1/(2 pi))", ok) && all;
    }

    if (!want_all && suite != "convolution" && suite != "taylor_green" && suite != "interpolant")
        throw std::invalid_argument("unknown oracle suite '" + suite +
                                    "' (expected all|convolution|taylor_green|interpolant)");
    return all ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nles: continuous data assimilation for a spectral Ladyzhenskaya LES model"};
    app.require_subcommand(1);

    std::string exp_file, out = ".", resume, suite = "all";
    double ckpt_interval = 0.0;
    int jobs = 1;
    std::vector<double> nu_bars;
    Overrides ov;

    auto* dns = app.add_subcommand("dns", "run the reference solver, emit checkpoints + spectra");
    dns->add_option("experiment", exp_file, "experiment file")->required();
    dns->add_option("--out", out, "output directory");
    dns->add_option("--checkpoint-interval", ckpt_interval, "time between checkpoints");
    dns->add_option("--resume", resume, "resume from a checkpoint file");
    add_override_flags(dns, ov);

    auto* twin = app.add_subcommand("twin", "full twin experiment, emit the error series CSV");
    twin->add_option("experiment", exp_file, "experiment file")->required();
    twin->add_option("--out", out, "output directory");
    add_override_flags(twin, ov);

    auto* sweep = app.add_subcommand("sweep", "nu_bar sweep: per-run CSVs plus summary");
    sweep->add_option("experiment", exp_file, "experiment file")->required();
    sweep->add_option("--nu-bar", nu_bars, "comma-separated nu_bar values")
        ->required()
        ->delimiter(',');
    sweep->add_option("--jobs", jobs, "parallel runs");
    sweep->add_option("--out", out, "output directory");
    add_override_flags(sweep, ov);

    auto* validate = app.add_subcommand("validate", "check the synchronization-theorem conditions");
    validate->add_option("experiment", exp_file, "experiment file")->required();
    add_override_flags(validate, ov);

    auto* oracle_cmd = app.add_subcommand("oracle", "run the brute-force oracle suites");
    oracle_cmd->add_option("--suite", suite, "all|convolution|taylor_green|interpolant");

    CLI11_PARSE(app, argc, argv);

    try {
        if (dns->parsed()) return cmd_dns(exp_file, ov, out, ckpt_interval, resume);
        if (twin->parsed()) return cmd_twin(exp_file, ov, out);
        if (sweep->parsed()) return cmd_sweep(exp_file, ov, out, nu_bars, jobs);
        if (validate->parsed()) return cmd_validate(exp_file, ov);
        if (oracle_cmd->parsed()) return cmd_oracle(suite);
    } catch (const DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return kExitDivergence;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitValidation;
    }
    return kExitOk;
}
