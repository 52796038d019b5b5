#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nles/field.hpp"
#include "nles/forcing.hpp"
#include "nles/interpolant.hpp"

namespace nles {

enum class Model { nse, ladyzhenskaya };

std::string to_string(Model m);
Model model_from_string(const std::string& s);

struct SolverConfig {
    Model model = Model::ladyzhenskaya;
    double nu = 2.75e-3;     // molecular viscosity
    double nu_bar = 0.0;     // turbulence viscosity, (C_s delta)^2 under the standard closure
    double p = 3.0;          // stress exponent; p = 3 is the Smagorinsky model
    double mu = 0.0;         // nudging strength; 0 disables data assimilation
    InterpolantSpec interpolant{};
    ForcingSpec forcing{};
    double cfl = 0.5;
    double dt_min = 1e-9;
    double dt_max = 1e-2;
    double t_end = 20.0;
    int picard_sweeps = 1;

    double effective_nu_bar() const { return model == Model::nse ? 0.0 : nu_bar; }
    void validate(const Grid& grid) const;
};

struct SimState {
    VectorField v;
    double t = 0.0;
    long step_count = 0;
    double last_dt = 0.0;
    // successive-iterate L2 difference of the final Picard sweep; only
    // meaningful when picard_sweeps >= 2
    double last_picard_diff = 0.0;

    SimState() = default;
    explicit SimState(VectorField v_, double t_ = 0.0) : v(std::move(v_)), t(t_) {}
};

/// CFL step size: clamp(cfl*dx/max(|v|_inf, 1e-8), dt_min, dt_max); an
/// explicit volume-average nudging term additionally enforces dt <= 1/(2 mu).
double compute_dt(const SimState& state, const SolverConfig& config);

/// One backward-Euler step of the nudged Ladyzhenskaya system. Advection is
/// explicit at v^n; viscosity and (Fourier-truncation) nudging are exact
/// per-mode implicit; the lagged-coefficient LES term is handled by Picard
/// sweeps starting from v^n. `observation` must be I_h(u(t+dt)) whenever
/// mu > 0 and is ignored otherwise.
SimState step(const SimState& state, const SolverConfig& config, double dt,
              const VectorField* observation);

/// Grashof number ||f|| / (nu^2 lambda1).
double grashof(const VectorField& f, double nu, double lambda1 = Grid::lambda1);

struct DaCondition {
    std::string name;
    std::string expression;
    double lhs = 0.0;
    double rhs = 0.0;
    bool satisfied = false;
};

struct DaConditionReport {
    bool applicable = false;  // false when mu = 0
    std::vector<DaCondition> conditions;
    std::vector<std::string> notes;
    bool all_satisfied() const;
};

/// Check the synchronization-theorem hypotheses (mu >= 8 nu lambda1 G^2,
/// 2 mu c0 h^2 <= nu) and the well-posedness condition (mu c0 h^2 <= nu).
/// Violations are warnings: the experiments synchronize well outside these
/// conservative bounds.
DaConditionReport validate_da_conditions(const SolverConfig& config, double G, const Grid& grid);

/// |LHS - RHS| of the discrete kinetic-energy identity
///   (||v1||^2-||v0||^2)/(2 dt) + nu ||grad v1||^2 + nu_bar ||grad v1||_p^p
///     = (f,v1) + mu (I_h u, v1) - mu (I_h v1, v1)
/// normalized by ||v1||^2; O(dt) for the first-order scheme.
double energy_balance_residual(const SimState& before, const SimState& after,
                               const SolverConfig& config, const VectorField* observation);

}  // namespace nles
