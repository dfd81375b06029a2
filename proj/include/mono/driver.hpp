#ifndef MONO_DRIVER_HPP
#define MONO_DRIVER_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mono/problems.hpp"
#include "mono/stepper.hpp"

namespace mono {

struct SolverConfig {
    double atol = 1e-6;
    double rtol = 1e-6;
    std::vector<double> atol_vec;  // optional per-component overrides
    std::vector<double> rtol_vec;
    double h_init = 0.0;           // <= 0 selects automatically
    int s_max = 2000;
    int rho_period = 25;           // accepted steps between re-estimations
    double safety = 0.8;
    double fac_min = 0.1;
    double fac_max = 10.0;
    double uround = 2.220446049250313e-16;
    bool use_analytic_rho = true;  // use the problem's bound when present
};

enum class SolveStatus {
    Success,
    StepUnderflow,     // controller drove h below the roundoff floor
    NonFiniteState,    // stage or solution overflowed and shrinking h did not help
    StageCapExceeded,  // s_max insufficient even at the smallest allowed h
};

const char* to_string(SolveStatus s);

struct IntegrationReport {
    SolveStatus status = SolveStatus::Success;
    std::string message;
    double x_final = 0;
    std::vector<double> y_final;
    long n_f = 0;         // every right-hand-side call, including rho estimation
    long n_accepted = 0;
    long n_rejected = 0;
    long n_rho = 0;       // power-iteration runs
    int s_max_used = 0;
    double elapsed_sec = 0;
};

struct SpectralRadiusEstimate {
    double rho = 0;
    std::vector<double> eigvec;  // final direction, for warm starts
    bool converged = true;
    int f_evals = 0;
};

// Jacobian-free nonlinear power iteration around (x, y); fy = f(x, y) must
// be supplied.  Returns a safety-inflated (x1.2) estimate.
SpectralRadiusEstimate estimate_spectral_radius(const RhsFn& f, double x,
                                                std::span<const double> y,
                                                std::span<const double> fy,
                                                const std::vector<double>* seed, double uround);

// Minimal s >= 3 with rho_s >= z, seeded by the stage-count fit and then
// adjusted against the exact tableau values.  Returns -1 when even s_max is
// insufficient (caller must shrink the step).
int select_stage_count(double z, int s_max);

// Stage-count fit s ~ a + b rho^c (before the minimality adjustment).
double stage_count_fit(double z);

// h0 from the 1/rho bound plus one forward-Euler curvature probe.  f_evals
// is the number of right-hand-side calls spent (0 or 1).
struct InitialStep {
    double h = 0;
    int f_evals = 0;
};
InitialStep initial_step_size(const RhsFn& f, double x0, std::span<const double> y0,
                              std::span<const double> f0, double span_len, double rho0,
                              std::span<const double> atol, std::span<const double> rtol);

// Step-ratio controller for the order-1 estimator driving the order-2
// method; with memory it is the predictive (Gustafsson-style) form.
double step_size_update(double err_now, std::optional<double> err_prev, double h_now,
                        double h_prev, double safety, double fac_min, double fac_max);

IntegrationReport integrate(const RhsFn& f, const OdeProblem& problem, const SolverConfig& cfg);

inline IntegrationReport integrate(const OdeProblem& problem, const SolverConfig& cfg) {
    return integrate(problem.rhs, problem, cfg);
}

}  // namespace mono

#endif
