#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "nles/solver.hpp"

namespace nles {

/// Thrown when a run produces non-finite fields; carries time and step.
class DivergenceError : public std::runtime_error {
  public:
    DivergenceError(const std::string& what, double t, long step)
        : std::runtime_error(what), t_(t), step_(step) {}
    double time() const { return t_; }
    long step() const { return step_; }

  private:
    double t_;
    long step_;
};

struct TwinExperiment {
    Grid grid{2, 128};
    SolverConfig reference{};  // truth run; mu is forced to 0
    SolverConfig nudged{};
    double spinup_time = 10.0;
    double record_interval = 0.05;
    std::uint64_t seed = 1;
    double spinup_energy = 1.0;
    double spinup_peak_k = 4.0;
    enum class V0 { zero, reference };
    V0 v0 = V0::zero;  // nudged initial state: v0 = 0 or v0 = u0
    // extend past t_end (up to max_total_factor * t_end) while the tail of
    // log l2_abs still has slope < -0.01, so plateau statistics are stable
    bool auto_extend = true;
    double max_total_factor = 3.0;

    void validate() const;
};

struct ErrorSeries {
    std::vector<double> times;
    std::vector<double> l2_abs;
    std::vector<double> l2_rel;
    std::vector<double> h1_rel;
    std::vector<double> energy_residuals;
    std::string metadata;  // '#'-prefixed config echo for the CSV writer

    std::size_t size() const { return times.size(); }
};

/// Spin up the reference state from a seeded random solenoidal field.
SimState spinup_reference(const TwinExperiment& exp);

/// Full twin experiment: spin up the reference, start the nudged run, step
/// both in lockstep feeding I_h(u(t_{n+1})) to the nudged step, and record
/// errors every record_interval. Deterministic for a fixed seed.
ErrorSeries run_twin(const TwinExperiment& exp);

/// Same, from a precomputed reference state (shared across sweep members).
ErrorSeries run_twin_from(const TwinExperiment& exp, const SimState& reference0);

/// Time average of l2_abs over the trailing `tail_fraction` of the series.
double plateau_estimate(const ErrorSeries& series, double tail_fraction = 0.25);

struct FitWindow {
    double t0 = 0.0;
    double t1 = 0.0;
};

/// Least-squares slope of log(l2_abs) vs t over the window (>= 5 points).
double decay_rate_fit(const ErrorSeries& series, FitWindow window);

/// Window from the error maximum down to the last record above 10x the
/// plateau floor; throws "no decaying window" for flat series.
FitWindow auto_decay_window(const ErrorSeries& series);

/// Least-squares slope of log(y) against log(x); x, y > 0, >= 2 distinct x.
double fit_loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct SweepResult {
    std::vector<double> nu_bars;
    std::vector<double> plateaus;
    double slope = 0.0;  // d log(plateau) / d log(nu_bar), theory: 1/2
    std::vector<ErrorSeries> series;
};

/// Twin runs across nu_bar values (>= 3 values spanning >= 2 decades) with
/// a least-squares fit of log(plateau) against log(nu_bar).
SweepResult nu_bar_sweep(const TwinExperiment& base, const std::vector<double>& nu_bar_values,
                         int jobs = 1);

}  // namespace nles
