// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.
// Desk scale: 2D 128^2 (3D kernels are covered by the oracle criteria and
// the unit tests). Runs the full twin-experiment pipeline end to end.

#include <cmath>
#include <cstring>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "nles/experiment.hpp"
#include "nles/fft.hpp"
#include "nles/les.hpp"
#include "nles/ops.hpp"
#include "nles/random_field.hpp"
#include "oracles.hpp"

using namespace nles;

namespace {

int g_pass = 0, g_fail = 0;

void report(int criterion, const std::string& name, bool ok, const std::string& detail) {
    std::cout << (ok ? "[PASS] " : "[FAIL] ") << "criterion " << criterion << ": " << name
              << "  (" << detail << ")\n"
              << std::flush;
    (ok ? g_pass : g_fail)++;
}

// the scaled 3D-reference defaults on the desk grid, via the config-io path
TwinExperiment desk_defaults() {
    return parse_experiment(
        "[grid]\n"
        "dim = 2\n"
        "n = 128\n"
        "[harness]\n"
        "t_end = 20\n"
        "spinup_time = 10\n"
        "seed = 1\n"
        "record_interval = 0.1\n"
        "auto_extend = false\n");
}

struct SyncOutcome {
    bool ok = false;
    double rate = 0.0;
    double t_below = -1.0;  // first time both relative errors are < 1e-9
    double final_l2 = 0.0;
};

SyncOutcome check_self_sync(const ErrorSeries& s) {
    SyncOutcome out;
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s.l2_rel[i] < 1e-9 && s.h1_rel[i] < 1e-9) {
            out.t_below = s.times[i];
            break;
        }
    }
    out.final_l2 = s.l2_rel.back();
    try {
        out.rate = decay_rate_fit(s, auto_decay_window(s));
    } catch (const std::exception&) {
        return out;  // no decay window at all
    }
    out.ok = out.t_below >= 0.0 && out.t_below <= 20.0 && out.rate < -0.5 &&
             s.l2_rel.back() < 1e-9 && s.h1_rel.back() < 1e-9;
    return out;
}

bool criterion1(ErrorSeries& les_series_out) {
    bool all = true;

    TwinExperiment les = desk_defaults();
    les.reference.model = Model::ladyzhenskaya;  // LES -> LES: observations from the same model
    les.reference.nu_bar = les.nudged.nu_bar;
    const ErrorSeries sl = run_twin(les);
    const SyncOutcome ol = check_self_sync(sl);
    {
        std::ostringstream d;
        d << "LES->LES rate " << ol.rate << ", below 1e-9 at t = " << ol.t_below
          << ", final l2_rel " << ol.final_l2;
        report(1, "self-synchronization to machine precision (LES->LES)", ol.ok, d.str());
        all = all && ol.ok;
    }
    les_series_out = sl;

    TwinExperiment nse = desk_defaults();
    nse.nudged.model = Model::nse;
    nse.nudged.nu_bar = 0.0;
    const ErrorSeries sn = run_twin(nse);
    const SyncOutcome on = check_self_sync(sn);
    {
        std::ostringstream d;
        d << "NSE->NSE rate " << on.rate << ", below 1e-9 at t = " << on.t_below
          << ", final l2_rel " << on.final_l2;
        report(1, "self-synchronization to machine precision (NSE->NSE)", on.ok, d.str());
        all = all && on.ok;
    }
    return all;
}

bool criterion2() {
    // NSE -> LES model-mismatch twins across four decades of nu_bar
    TwinExperiment base = desk_defaults();
    base.nudged.t_end = 20.0;
    base.reference.t_end = 20.0;
    base.auto_extend = true;

    const std::vector<double> nu_bars{1e-8, 1e-7, 1e-6, 1e-5, 1e-4};
    const SweepResult res = nu_bar_sweep(base, nu_bars, 2);

    bool decays = true;
    for (const ErrorSeries& s : res.series) {
        try {
            (void)auto_decay_window(s);  // an initial decay segment must exist
        } catch (const std::exception&) {
            decays = false;
        }
    }
    const bool slope_ok = res.slope >= 0.3 && res.slope <= 0.7;
    std::ostringstream d;
    d << "plateaus";
    for (std::size_t i = 0; i < res.plateaus.size(); ++i)
        d << ' ' << res.nu_bars[i] << "->" << res.plateaus[i];
    d << "; fitted slope " << res.slope << " vs window [0.3, 0.7]";
    report(2, "model-mismatch plateau scales like nu_bar^(1/2)", decays && slope_ok, d.str());

    // ordering invariant: plateaus do not grow as the model error shrinks
    bool mono = true;
    for (std::size_t i = 0; i < nu_bars.size(); ++i)
        for (std::size_t j = 0; j < nu_bars.size(); ++j)
            if (nu_bars[i] <= nu_bars[j] / 10.0 && res.plateaus[i] > 1.5 * res.plateaus[j])
                mono = false;
    report(2, "plateau ordering is monotone across decades", mono,
           mono ? "no inversions beyond the 50% tolerance" : "ordering inversion found");
    return decays && slope_ok && mono;
}

bool criterion3() {
    // identical initial data, nu_coarse = 10 nu_fine; nudged vs unnudged LES.
    // The 10x viscosity mismatch damps the observed band at a rate
    // delta_nu kappa^2 ~ 80 near k_c = 9, so the feedback must dominate it:
    // mu = 300 (the default mu = 30 cannot dominate that rate).
    TwinExperiment exp = desk_defaults();
    exp.nudged.nu = 10.0 * exp.reference.nu;
    exp.nudged.mu = 300.0;
    exp.nudged.t_end = 10.0;
    exp.reference.t_end = 10.0;

    const SimState u0 = spinup_reference(exp);
    const ErrorSeries with_da = run_twin_from(exp, u0);

    TwinExperiment no_da = exp;
    no_da.nudged.mu = 0.0;
    const ErrorSeries without = run_twin_from(no_da, u0);

    const double e_da = with_da.l2_rel.back();
    const double e_free = without.l2_rel.back();
    const bool ok = e_free > 0.1 && e_da * 10.0 <= e_free;
    std::ostringstream d;
    d << "final rel error with DA " << e_da << ", without " << e_free << " (ratio "
      << e_free / std::max(e_da, 1e-300) << ")";
    report(3, "nudged LES beats free-running LES under viscosity mismatch", ok, d.str());
    return ok;
}

bool criterion4() {
    const Grid g(2, 128);
    const InterpolantSpec spec = InterpolantSpec::fourier(9);
    int bound_violations = 0, contraction_violations = 0;
    double max_ratio = 0.0;
    const int fields = 120;
    for (int s = 0; s < fields; ++s) {
        RandomStream rng(9000 + static_cast<std::uint64_t>(s));
        SpectralField phi(g);
        for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
            const double re = rng.gaussian();
            const double im = rng.gaussian();
            if (kx == 0 && ky == 0 && kz == 0) return;
            if (std::abs(kx) > g.dealias_limit() || std::abs(ky) > g.dealias_limit()) return;
            phi[idx] = Complex(re, im) / (1.0 + kx * kx + ky * ky);
        });
        phi.symmetrize();
        const SpectralField ip = apply(spec, phi);
        if (l2_norm(ip) > l2_norm(phi)) ++contraction_violations;
        if (l2_norm(phi - ip) > spec.h * h1_seminorm(phi)) ++bound_violations;
        max_ratio = std::max(max_ratio, oracle::fourier_tail_ratio(phi, spec.cutoff_k()));
    }
    const bool ok =
        bound_violations == 0 && contraction_violations == 0 && max_ratio < 1.0 / (2.0 * pi) + 1e-10;
    std::ostringstream d;
    d << fields << " fields, contraction violations " << contraction_violations
      << ", c0-bound violations " << bound_violations << ", max tail ratio " << max_ratio
      << " vs 1/(2 pi) = " << 1.0 / (2.0 * pi);
    report(4, "interpolant certificates (c_I <= 1, c0 <= 1)", ok, d.str());
    return ok;
}

bool criterion5() {
    bool all = true;

    {  // (a) dealiased advection vs brute-force convolution on 8^2 / 8^3
        double worst = 0.0;
        for (const Grid g : {Grid(2, 8), Grid(3, 8)}) {
            const VectorField v = random_solenoidal_field(g, 321, 0.5, 2.0);
            const VectorField fast = advection(v);
            const VectorField slow = oracle::advection_by_convolution(v);
            worst = std::max(worst, l2_norm(fast - slow) / std::max(1.0, l2_norm(slow)));
        }
        const bool ok = worst < 1e-12;
        std::ostringstream d;
        d << "max relative deviation " << worst;
        report(5, "(a) pseudospectral advection equals brute-force convolution", ok, d.str());
        all = all && ok;
    }

    {  // (b) Taylor-Green viscous decay, first order under step halving
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
            return l2_norm(st.v - oracle::taylor_green_2d(g, 1.0, nu, T)) /
                   l2_norm(oracle::taylor_green_2d(g, 1.0, nu, T));
        };
        const double order = std::log2(decay_error(0.01) / decay_error(0.005));
        const bool ok = order > 0.8 && order < 1.2;
        std::ostringstream d;
        d << "observed order " << order;
        report(5, "(b) Taylor-Green decay matches exp(-8 pi^2 nu t) at first order", ok, d.str());
        all = all && ok;
    }

    {  // (c) p = 2 stress divergence equals nu_bar Laplacian
        const Grid g(2, 32);
        const VectorField v = random_solenoidal_field(g, 77, 0.5, 5.0);
        const double nu_bar = 0.37;
        const VectorField lady = ladyzhenskaya_divergence(v, 2.0, nu_bar);
        VectorField lap(g);
        for_each_mode(g, [&](std::size_t idx, int kx, int ky, int kz) {
            const double k2 = 4.0 * pi * pi *
                              (static_cast<double>(kx) * kx + static_cast<double>(ky) * ky +
                               static_cast<double>(kz) * kz);
            for (int c = 0; c < g.dim; ++c) lap[c][idx] = -nu_bar * k2 * v[c][idx];
        });
        const double dev = l2_norm(lady - lap) / std::max(1.0, l2_norm(lap));
        const bool ok = dev < 1e-12;
        std::ostringstream d;
        d << "relative deviation " << dev;
        report(5, "(c) p = 2 stress divergence equals nu_bar Laplacian", ok, d.str());
        all = all && ok;
    }

    {  // (d) discrete energy-balance residual converges at first order
        const Grid g(2, 32);
        SolverConfig cfg;
        cfg.model = Model::ladyzhenskaya;
        cfg.nu = 5e-3;
        cfg.nu_bar = 1e-5;
        cfg.forcing = {ForcingKind::kolmogorov_2d, 1.0, 4};
        auto mean_resid = [&](double dt) {
            SimState st(random_solenoidal_field(g, 13, 0.5, 4.0), 0.0);
            st.v = dealias_23(std::move(st.v));
            st.v.solenoidal = true;
            cfg.dt_min = cfg.dt_max = dt;
            double acc = 0.0;
            const long steps = std::lround(0.2 / dt);
            for (long i = 0; i < steps; ++i) {
                const SimState prev = st;
                st = step(st, cfg, dt, nullptr);
                acc += energy_balance_residual(prev, st, cfg, nullptr);
            }
            return acc / static_cast<double>(steps);
        };
        const double order = std::log2(mean_resid(2e-3) / mean_resid(1e-3));
        const bool ok = order > 0.8 && order < 1.2;
        std::ostringstream d;
        d << "observed order " << order;
        report(5, "(d) energy-balance residual vanishes at first order", ok, d.str());
        all = all && ok;
    }
    return all;
}

bool criterion6() {
    bool all = true;

    {  // divergence-free and mean-free at every step of a forced LES run
        TwinExperiment exp = desk_defaults();
        SolverConfig cfg = exp.nudged;
        cfg.mu = 0.0;
        cfg.t_end = 1.0;
        SimState st(random_solenoidal_field(exp.grid, 31, 1.0, 4.0), 0.0);
        st.v = dealias_23(std::move(st.v));
        st.v.solenoidal = true;
        double worst_div = 0.0, worst_mean = 0.0;
        int steps = 0;
        while (st.t < cfg.t_end) {
            st = step(st, cfg, std::min(compute_dt(st, cfg), cfg.t_end - st.t), nullptr);
            const DivergenceStats ds = divergence_stats(st.v);
            worst_div = std::max(worst_div, ds.max_div / std::max(ds.scale, 1e-30));
            for (int c = 0; c < exp.grid.dim; ++c)
                worst_mean = std::max(worst_mean, std::abs(st.v[c].mean()));
            ++steps;
        }
        const bool ok = worst_div < 1e-12 && worst_mean == 0.0;
        std::ostringstream d;
        d << steps << " steps, worst relative divergence " << worst_div << ", worst mean "
          << worst_mean;
        report(6, "divergence-free and mean-free preserved every step", ok, d.str());
        all = all && ok;
    }

    {  // self twin: identical configs and initial state stay identical
        TwinExperiment exp = parse_experiment("[grid]\nn = 64\n");
        exp.nudged = exp.reference;
        exp.nudged.mu = 30.0;
        exp.nudged.interpolant = InterpolantSpec::fourier(9);
        exp.nudged.t_end = 5.0;
        exp.reference.t_end = 5.0;
        exp.v0 = TwinExperiment::V0::reference;
        exp.spinup_time = 2.0;
        exp.record_interval = 0.1;
        exp.auto_extend = false;
        const ErrorSeries s = run_twin(exp);
        double worst = 0.0;
        for (double e : s.l2_abs) worst = std::max(worst, e);
        const bool ok = worst < 1e-13;
        std::ostringstream d;
        d << "max |u - v| over " << s.size() << " records: " << worst;
        report(6, "self twin stays below 1e-13 for all time", ok, d.str());
        all = all && ok;
    }

    {  // bit-identical reruns
        TwinExperiment base = parse_experiment("[grid]\nn = 64\n[harness]\nt_end = 2\n");
        base.spinup_time = 1.0;
        base.auto_extend = false;
        const ErrorSeries a = run_twin(base);
        const ErrorSeries b = run_twin(base);
        const bool ok = a.size() == b.size() &&
                        std::memcmp(a.l2_abs.data(), b.l2_abs.data(),
                                    a.size() * sizeof(double)) == 0 &&
                        std::memcmp(a.times.data(), b.times.data(),
                                    a.size() * sizeof(double)) == 0;
        std::ostringstream d;
        d << a.size() << " records compared bitwise";
        report(6, "fixed seed reruns are bit-identical", ok, d.str());
        all = all && ok;
    }
    return all;
}

bool criterion7(bool criterion1_synced, const ErrorSeries& les_series) {
    // the production parameter set mu = 30, h = 1/9, nu = 2.75e-3 violates
    // the h-condition of the synchronization theorem, yet the matching
    // desk-scale run synchronizes: the thresholds are conservative
    TwinExperiment exp = desk_defaults();
    const VectorField f = make_forcing(exp.nudged.forcing, exp.grid);
    const double G = grashof(f, exp.nudged.nu);
    const DaConditionReport rep = validate_da_conditions(exp.nudged, G, exp.grid);

    const DaCondition* sync = nullptr;
    for (const auto& c : rep.conditions)
        if (c.name == "h_condition_sync") sync = &c;

    const bool flagged = rep.applicable && sync != nullptr && !sync->satisfied &&
                         std::abs(sync->lhs - 60.0 / 81.0) < 1e-12;
    const bool ok = flagged && criterion1_synced && les_series.l2_rel.back() < 1e-9;
    std::ostringstream d;
    d << "2 mu c0 h^2 = " << (sync ? sync->lhs : 0.0) << " > nu = "
      << (sync ? sync->rhs : 0.0) << " flagged WARN; run still synchronized to "
      << les_series.l2_rel.back();
    report(7, "theorem conditions are conservative: WARN yet synchronized", ok, d.str());
    return ok;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    if (argc > 1) only = std::atoi(argv[1]);

    bool all = true;
    ErrorSeries les_series;
    bool c1 = false;

    if (!only || only == 1 || only == 7) {
        c1 = criterion1(les_series);
        if (!only || only == 1) all = all && c1;
    }
    if (!only || only == 2) all = criterion2() && all;
    if (!only || only == 3) all = criterion3() && all;
    if (!only || only == 4) all = criterion4() && all;
    if (!only || only == 5) all = criterion5() && all;
    if (!only || only == 6) all = criterion6() && all;
    if (!only || only == 7) all = criterion7(c1, les_series) && all;

    std::cout << (all ? "ACCEPTANCE: all criteria passed" : "ACCEPTANCE: FAILURES present")
              << " (" << g_pass << " passed, " << g_fail << " failed)\n";
    return all ? 0 : 1;
}
