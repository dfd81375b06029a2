#include "mono/stepper.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "mono/kernels.hpp"

namespace mono {

StepResult mono_step(const RhsFn& f, const MethodTableau& tab, double x0,
                     std::span<const double> y0, std::span<const double> f0, double h,
                     std::span<double> y1, std::span<double> y_embedded, StepWorkspace& ws) {
    const int s = tab.s;
    const std::size_t n = y0.size();
    if (!(h > 0.0)) throw std::invalid_argument("mono_step: step size must be positive");
    ws.resize(n);

    StepResult res;

    // rolling stage buffers; Y_0 aliases y0 directly
    std::span<double> bufs[3] = {ws.v0, ws.v1, ws.v2};
    std::span<const double> yjm2 = y0;
    std::span<double> yjm1 = bufs[0];
    int next = 1;

    if (!kernels::first_stage(yjm1, y0, f0, h * tab.b[1] * tab.w1)) {
        res.ok = false;
        res.bad_stage = 1;
        return res;
    }

    std::span<const double> y_sm2;  // snapshot views resolved after the loop
    for (int j = 2; j <= s; ++j) {
        f(x0 + tab.c[j - 1] * h, yjm1, ws.fj);
        ++res.f_evals;
        std::span<double> yj = bufs[next];
        next = (next + 1) % 3;
        const bool ok = kernels::stage_update(yj, y0, yjm1, yjm2, ws.fj, f0,
                                              1.0 - tab.mu[j] - tab.nu[j], tab.mu[j], tab.nu[j],
                                              h * tab.mu_tilde[j], tab.b[j - 1]);
        if (!ok) {
            res.ok = false;
            res.bad_stage = j;
            return res;
        }
        yjm2 = yjm1;
        yjm1 = yj;
    }
    // after the loop: yjm1 = Y_s, yjm2 = Y_{s-1}; the buffer before that is Y_{s-2}
    std::span<const double> y_s = yjm1;
    std::span<const double> y_sm1 = yjm2;
    y_sm2 = bufs[next];  // the buffer about to be overwritten next holds Y_{s-2}

    const double ws_coef = tab.gamma_s / tab.b[s];
    const double wsm2_coef = tab.delta_s / tab.b[s - 2];
    if (!kernels::final_combine(y1, y0, y_s, y_sm2, f0, 1.0 - ws_coef - wsm2_coef, ws_coef,
                                wsm2_coef, h * tab.b[s - 1])) {
        res.ok = false;
        res.bad_stage = s + 1;
        return res;
    }
    std::copy(y_sm1.begin(), y_sm1.end(), y_embedded.begin());
    return res;
}

void estimate_error(std::span<const double> y0, std::span<const double> y1,
                    std::span<const double> f1, double h, std::span<double> est) {
    for (std::size_t i = 0; i < est.size(); ++i)
        est[i] = 0.1 * (y0[i] - y1[i] + h * f1[i]);
}

double error_norm(std::span<const double> est, std::span<const double> y0,
                  std::span<const double> y1, std::span<const double> atol,
                  std::span<const double> rtol) {
    const std::size_t n = est.size();
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = atol.size() == 1 ? atol[0] : atol[i];
        const double r = rtol.size() == 1 ? rtol[0] : rtol[i];
        const double w = a + r * std::max(std::fabs(y0[i]), std::fabs(y1[i]));
        const double q = est[i] / w;
        sum += q * q;
    }
    return std::sqrt(sum / double(n));
}

}  // namespace mono
