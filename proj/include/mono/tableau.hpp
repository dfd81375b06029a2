#ifndef MONO_TABLEAU_HPP
#define MONO_TABLEAU_HPP

#include <complex>
#include <optional>
#include <vector>

namespace mono {

// All per-stage-count coefficients of the monotonic second-order method.
// Immutable after construction; safe to share across threads.
struct MethodTableau {
    int s = 0;          // stage count, >= 3
    double a = 0;       // arccosh(w0): the parameterization the root solve works in
    double w0 = 0;      // Chebyshev shift, > 1
    double w1 = 0;      // Chebyshev scale, > 0
    double alpha_s = 0;
    double gamma_s = 0;
    double delta_s = 0;
    double rho = 0;        // monotonicity-interval length, (1 + w0)/w1
    double err_const = 0;  // C_s = (1 - R'''_s(0))/6

    std::vector<double> b;         // b_0 .. b_s, b_j = 1/(1 + T_j(w0))
    std::vector<double> mu;        // index j in [2, s]; [0], [1] unused
    std::vector<double> nu;
    std::vector<double> mu_tilde;
    std::vector<double> c;         // abscissae c_0 .. c_{s-1}, c_{s-1} = 1
};

// Stability-function values at one point z = h*lambda.
struct StabilitySample {
    std::complex<double> z;
    std::complex<double> R;       // R_s(z)
    std::complex<double> Rprime;  // R'_s(z) = internal polynomial of index s-1
    std::vector<std::complex<double>> internal;  // R~_0 .. R~_s when requested
};

struct MonotonicityScan {
    double min_Rprime = 0;  // min of R'_s over the scan
    double min_R = 0;       // min of R_s
    double min_internal = 0;            // min over j >= 1 of R~_j
    double max_internal_interior = 0;   // max over j >= 1 on points z < 0
};

// Solves the w0 equation for stage count s in the a = arccosh(w0)
// parameterization (bracketing plus safeguarded Newton).  Deterministic for
// fixed s.  Throws std::invalid_argument for s < 3 and std::runtime_error if
// no bracket is found or the residual tolerance is unreachable.
double solve_shift_param(int s);
double solve_w0(int s);

// Scaled residual of the w0 equation at shift parameter a.
double shift_equation_residual(int s, double a);

// Builds the full coefficient set for stage count s.
MethodTableau build_tableau(int s);

// Shared process-wide tableau cache (concurrent lookups, at-most-once
// construction per s).
const MethodTableau& cached_tableau(int s);

// R_s and all internals via the same stage recurrence the stepper uses.
StabilitySample eval_stability(const MethodTableau& tab, std::complex<double> z,
                               bool keep_internal = false);

// R_s via the closed Chebyshev form; independent oracle for eval_stability.
std::complex<double> eval_stability_direct(const MethodTableau& tab, std::complex<double> z);

double error_constant(const MethodTableau& tab);

// Samples m uniformly spaced points of (-rho, 0], z_k = -rho*(m-1-k)/m.
MonotonicityScan monotonicity_scan(const MethodTableau& tab, int m);

// |R_s| on a rectangular complex grid, row-major over (im, re).
std::vector<double> stability_region_grid(const MethodTableau& tab, double re_lo, double re_hi,
                                          double im_lo, double im_hi, int nx, int ny);

// Classical second-order RKC stability polynomial (damped), for comparison
// plots and error-constant ratios only.
std::complex<double> rkc2_reference_polynomial(int s, double damping, std::complex<double> z);
double rkc2_error_constant(int s, double damping);

inline constexpr double kRkcDefaultDamping = 2.0 / 13.0;

}  // namespace mono

#endif
