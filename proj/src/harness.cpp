#include "nles/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "nles/ops.hpp"
#include "nles/random_field.hpp"

namespace nles {

void TwinExperiment::validate() const {
    grid.validate();
    reference.validate(grid);
    nudged.validate(grid);
    if (spinup_time < 0.0) throw std::invalid_argument("spinup_time must be >= 0");
    if (!(record_interval > 0.0)) throw std::invalid_argument("record_interval must be > 0");
    if (!(spinup_energy > 0.0)) throw std::invalid_argument("spinup_energy must be > 0");
    if (!(spinup_peak_k > 0.0)) throw std::invalid_argument("spinup_peak_k must be > 0");
    if (max_total_factor < 1.0) throw std::invalid_argument("max_total_factor must be >= 1");
}

namespace {

void check_finite(const SimState& s, const char* who) {
    const double n = l2_norm(s.v);
    if (!std::isfinite(n))
        throw DivergenceError(std::string(who) + " run diverged (non-finite L2 norm) at t = " +
                                  std::to_string(s.t),
                              s.t, s.step_count);
}

// advance `st` to exactly t_target under its own CFL limit
void advance_to(SimState& st, const SolverConfig& cfg, double t_target, const char* who) {
    while (st.t < t_target - 1e-14) {
        const double remaining = t_target - st.t;
        double dt = compute_dt(st, cfg);
        if (dt >= remaining) {
            dt = remaining;
            st = step(st, cfg, dt, nullptr);
            st.t = t_target;  // absorb floating-point accumulation
        } else {
            st = step(st, cfg, dt, nullptr);
        }
        check_finite(st, who);
    }
}

// least-squares slope of log(y) vs t over indices [i0, i1]
double log_slope(const ErrorSeries& s, std::size_t i0, std::size_t i1) {
    double st = 0, sy = 0, stt = 0, sty = 0;
    std::size_t m = 0;
    for (std::size_t i = i0; i <= i1; ++i) {
        if (!(s.l2_abs[i] > 0.0)) continue;
        const double t = s.times[i];
        const double y = std::log(s.l2_abs[i]);
        st += t;
        sy += y;
        stt += t * t;
        sty += t * y;
        ++m;
    }
    if (m < 2) throw std::invalid_argument("log_slope: not enough positive points");
    const double den = static_cast<double>(m) * stt - st * st;
    if (den == 0.0) throw std::invalid_argument("log_slope: degenerate time values");
    return (static_cast<double>(m) * sty - st * sy) / den;
}

}  // namespace

SimState spinup_reference(const TwinExperiment& exp) {
    SolverConfig cfg = exp.reference;
    cfg.mu = 0.0;
    VectorField u0 =
        random_solenoidal_field(exp.grid, exp.seed, exp.spinup_energy, exp.spinup_peak_k);
    u0 = dealias_23(std::move(u0));
    u0.solenoidal = true;
    SimState st(std::move(u0), -exp.spinup_time);
    advance_to(st, cfg, 0.0, "spin-up");
    st.t = 0.0;
    st.step_count = 0;
    return st;
}

ErrorSeries run_twin(const TwinExperiment& exp) {
    exp.validate();
    return run_twin_from(exp, spinup_reference(exp));
}

ErrorSeries run_twin_from(const TwinExperiment& exp, const SimState& reference0) {
    exp.validate();
    SolverConfig ref_cfg = exp.reference;
    ref_cfg.mu = 0.0;
    const SolverConfig& nud_cfg = exp.nudged;
    const bool nudging = nud_cfg.mu > 0.0;

    SimState ref = reference0;
    SimState nud(exp.v0 == TwinExperiment::V0::reference ? ref.v : VectorField(exp.grid, true),
                 ref.t);

    ErrorSeries series;
    auto record = [&](double residual) {
        const VectorField w = ref.v - nud.v;
        const double abs = l2_norm(w);
        const double un = l2_norm(ref.v);
        const double gh = h1_seminorm(w);
        const double ug = h1_seminorm(ref.v);
        series.times.push_back(nud.t);
        series.l2_abs.push_back(abs);
        series.l2_rel.push_back(un > 0.0 ? abs / un : abs);
        series.h1_rel.push_back(ug > 0.0 ? gh / ug : gh);
        series.energy_residuals.push_back(residual);
    };
    record(0.0);

    double t_end = nud_cfg.t_end;
    const double t_cap = nud_cfg.t_end * exp.max_total_factor;
    double next_record = nud.t + exp.record_interval;

    while (true) {
        while (nud.t < t_end - 1e-12) {
            double dt = compute_dt(nud, nud_cfg);
            dt = std::min(dt, t_end - nud.t);
            const double t_next = nud.t + dt;
            const bool will_record = t_next >= next_record - 1e-12 || t_next >= t_end - 1e-12;

            advance_to(ref, ref_cfg, t_next, "reference");

            VectorField obs;
            if (nudging) obs = apply(nud_cfg.interpolant, ref.v);

            SimState prev;
            if (will_record) prev = nud;
            nud = step(nud, nud_cfg, dt, nudging ? &obs : nullptr);
            nud.t = ref.t;  // keep the pair on one clock
            check_finite(nud, "nudged");

            if (will_record) {
                const double resid =
                    energy_balance_residual(prev, nud, nud_cfg, nudging ? &obs : nullptr);
                record(resid);
                while (next_record <= nud.t + 1e-12) next_record += exp.record_interval;
            }
        }

        if (!exp.auto_extend || t_end >= t_cap - 1e-12 || series.size() < 8) break;
        // still decaying? extend the window so the plateau average is settled
        const auto i1 = series.size() - 1;
        const auto i0 = static_cast<std::size_t>(std::lround(0.75 * static_cast<double>(i1)));
        double tail;
        try {
            tail = log_slope(series, i0, i1);
        } catch (const std::invalid_argument&) {
            break;
        }
        if (tail >= -0.01) break;
        t_end = std::min(t_cap, t_end + 0.5 * nud_cfg.t_end);
    }
    return series;
}

double plateau_estimate(const ErrorSeries& series, double tail_fraction) {
    if (series.size() == 0) throw std::invalid_argument("plateau_estimate: empty series");
    if (!(tail_fraction > 0.0) || tail_fraction > 1.0)
        throw std::invalid_argument("plateau_estimate: tail_fraction must be in (0,1]");
    if (series.size() == 1) return series.l2_abs[0];

    const double t0 = series.times.front();
    const double t1 = series.times.back();
    const double start = t1 - tail_fraction * (t1 - t0);
    // trapezoid time average over records with t >= start
    double area = 0.0, span = 0.0;
    for (std::size_t i = 0; i + 1 < series.size(); ++i) {
        const double a = std::max(series.times[i], start);
        const double b = series.times[i + 1];
        if (b <= a) continue;
        // linear interpolation of the left endpoint when the window cuts in
        const double dt_full = series.times[i + 1] - series.times[i];
        const double ya = dt_full > 0.0
                              ? series.l2_abs[i] + (series.l2_abs[i + 1] - series.l2_abs[i]) *
                                                       (a - series.times[i]) / dt_full
                              : series.l2_abs[i];
        area += 0.5 * (ya + series.l2_abs[i + 1]) * (b - a);
        span += b - a;
    }
    if (span == 0.0) return series.l2_abs.back();
    return area / span;
}

double decay_rate_fit(const ErrorSeries& series, FitWindow window) {
    std::size_t i0 = series.size(), i1 = 0;
    std::size_t count = 0;
    for (std::size_t i = 0; i < series.size(); ++i) {
        if (series.times[i] < window.t0 - 1e-12 || series.times[i] > window.t1 + 1e-12) continue;
        if (!(series.l2_abs[i] > 0.0)) continue;
        i0 = std::min(i0, i);
        i1 = std::max(i1, i);
        ++count;
    }
    if (count < 5)
        throw std::invalid_argument("decay_rate_fit: need at least 5 positive points in window");
    return log_slope(series, i0, i1);
}

FitWindow auto_decay_window(const ErrorSeries& series) {
    if (series.size() < 5) throw std::invalid_argument("auto_decay_window: series too short");
    const double floor = plateau_estimate(series, 0.25);
    const double threshold = 10.0 * floor;

    std::size_t i_max = 0;
    for (std::size_t i = 1; i < series.size(); ++i)
        if (series.l2_abs[i] > series.l2_abs[i_max]) i_max = i;

    std::size_t i_end = series.size();
    for (std::size_t i = series.size(); i-- > i_max;) {
        if (series.l2_abs[i] > threshold) {
            i_end = i;
            break;
        }
    }
    if (i_end == series.size() || i_end < i_max + 4)
        throw std::runtime_error("auto_decay_window: no decaying window");
    return {series.times[i_max], series.times[i_end]};
}

SweepResult nu_bar_sweep(const TwinExperiment& base, const std::vector<double>& nu_bar_values,
                         int jobs) {
    if (nu_bar_values.size() < 3)
        throw std::invalid_argument("nu_bar_sweep: need >= 3 nu_bar values");
    double lo = nu_bar_values[0], hi = nu_bar_values[0];
    for (double v : nu_bar_values) {
        if (!(v > 0.0)) throw std::invalid_argument("nu_bar_sweep: nu_bar values must be > 0");
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi < 100.0 * lo)
        throw std::invalid_argument("nu_bar_sweep: values must span >= 2 decades (degenerate fit)");
    base.validate();

    const SimState u0 = spinup_reference(base);

    SweepResult res;
    res.nu_bars = nu_bar_values;
    res.series.resize(nu_bar_values.size());
    res.plateaus.resize(nu_bar_values.size());

    std::vector<std::exception_ptr> errors(nu_bar_values.size());
    std::atomic<std::size_t> cursor{0};
    auto worker = [&]() {
        for (;;) {
            const std::size_t i = cursor.fetch_add(1);
            if (i >= nu_bar_values.size()) return;
            try {
                TwinExperiment exp = base;
                exp.nudged.model = Model::ladyzhenskaya;
                exp.nudged.nu_bar = nu_bar_values[i];
                res.series[i] = run_twin_from(exp, u0);
                res.plateaus[i] = plateau_estimate(res.series[i]);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };

    const int nthreads = std::max(1, std::min<int>(jobs, static_cast<int>(nu_bar_values.size())));
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(nthreads));
        for (int i = 0; i < nthreads; ++i) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);

    res.slope = fit_loglog_slope(res.nu_bars, res.plateaus);
    return res;
}

double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("fit_loglog_slope: need >= 2 (x, y) pairs");
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw std::invalid_argument("fit_loglog_slope: values must be positive");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const auto m = static_cast<double>(x.size());
    const double den = m * sxx - sx * sx;
    if (den == 0.0) throw std::invalid_argument("fit_loglog_slope: degenerate fit (equal x values)");
    return (m * sxy - sx * sy) / den;
}

}  // namespace nles
