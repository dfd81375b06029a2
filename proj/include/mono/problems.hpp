#ifndef MONO_PROBLEMS_HPP
#define MONO_PROBLEMS_HPP

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mono/stepper.hpp"

namespace mono {

// A stiff test problem behind the uniform interface the driver consumes.
struct OdeProblem {
    std::string name;
    int n = 0;
    double x0 = 0;
    double x_end = 0;
    std::vector<double> y0;
    RhsFn rhs;
    // analytic spectral-radius bound; null when only power iteration applies
    std::function<double(double x, std::span<const double> y)> rho_bound;
    // closed-form terminal state for the synthetic problems
    std::function<std::vector<double>()> analytic_reference;
};

struct GridSpec {
    int N = 0;       // interior point count (per dimension for 2-D)
    double dx = 0;
    enum class Boundary { Dirichlet, Neumann, Periodic } boundary = Boundary::Dirichlet;
};

// Known names: cusp, finag, burgers, comb, linear, decay_grid.
// Throws std::invalid_argument for anything else.
OdeProblem make_problem(const std::string& name);

// Synthetic problems with explicit parameters (the named defaults above
// delegate here).
OdeProblem make_linear_problem(double lambda, double x0, double x_end, double y0);
OdeProblem make_decay_grid_problem(int N, double t_end);

// Terminal reference state: closed form when the problem has one, otherwise
// loaded from the reference data directory ($MONO_REF_DIR, default
// "data/refs").  Throws std::runtime_error when no reference is available.
std::vector<double> reference_solution(const OdeProblem& p);

// Unscaled Euclidean norm of y - ref (the metric the run statistics use).
double euclidean_error(std::span<const double> y, std::span<const double> ref);

// Reference-file handling (flat binary64 payload behind a one-line text
// header).  Exposed for the maintenance command that regenerates them.
struct ReferenceFile {
    std::string problem;
    int n = 0;
    double atol = 0, rtol = 0;
    std::string generator;
    std::vector<double> data;
};
std::string reference_dir();
std::string reference_path(const std::string& problem);
void write_reference(const std::string& path, const ReferenceFile& ref);
ReferenceFile read_reference(const std::string& path);

}  // namespace mono

#endif
