#ifndef MONO_STEPPER_HPP
#define MONO_STEPPER_HPP

#include <functional>
#include <span>
#include <vector>

#include "mono/tableau.hpp"

namespace mono {

// Right-hand-side evaluator: dydx = f(x, y).  Must be safe for the caller's
// chosen concurrency; one step invocation calls it strictly sequentially.
using RhsFn = std::function<void(double x, std::span<const double> y, std::span<double> dydx)>;

// Scratch buffers for the stage recurrence.  Three rolling stage vectors
// plus one derivative buffer; peak auxiliary storage is 4n regardless of s.
struct StepWorkspace {
    std::vector<double> v0, v1, v2, fj;
    void resize(std::size_t n) {
        v0.resize(n);
        v1.resize(n);
        v2.resize(n);
        fj.resize(n);
    }
};

struct StepResult {
    bool ok = true;
    int bad_stage = -1;  // stage index where a non-finite value appeared
    int f_evals = 0;     // evaluations performed inside the step (s - 1)
};

// One step of the monotonic scheme.  f0 = f(x0, y0) is supplied by the
// caller (reused from the previous step).  On success y1 holds the
// second-order result and y_embedded the first-order stage Y_{s-1}.
StepResult mono_step(const RhsFn& f, const MethodTableau& tab, double x0,
                     std::span<const double> y0, std::span<const double> f0, double h,
                     std::span<double> y1, std::span<double> y_embedded, StepWorkspace& ws);

// est = (1/10) (y0 - y1 + h f1), asymptotically proportional to h^2 y''.
void estimate_error(std::span<const double> y0, std::span<const double> y1,
                    std::span<const double> f1, double h, std::span<double> est);

// Scaled RMS norm; the step is accepted iff the result is <= 1.  atol/rtol
// of size 1 broadcast over all components.
double error_norm(std::span<const double> est, std::span<const double> y0,
                  std::span<const double> y1, std::span<const double> atol,
                  std::span<const double> rtol);

}  // namespace mono

#endif
