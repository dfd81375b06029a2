#include "mono/kernels.hpp"

#include <cmath>
#include <cstddef>

namespace mono::kernels {

bool first_stage_serial(std::span<double> out, std::span<const double> y0,
                        std::span<const double> f0, double h_coeff) {
    bool ok = true;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = y0[i] + h_coeff * f0[i];
        ok = ok && std::isfinite(out[i]);
    }
    return ok;
}

bool first_stage(std::span<double> out, std::span<const double> y0,
                 std::span<const double> f0, double h_coeff) {
    const std::ptrdiff_t n = std::ptrdiff_t(out.size());
    bool ok = true;
#pragma omp parallel for reduction(&& : ok) if (n >= kParallelGrain)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = y0[i] + h_coeff * f0[i];
        ok = ok && std::isfinite(out[i]);
    }
    return ok;
}

bool stage_update_serial(std::span<double> out, std::span<const double> y0,
                         std::span<const double> yjm1, std::span<const double> yjm2,
                         std::span<const double> fj, std::span<const double> f0,
                         double w_y0, double mu, double nu, double hmt, double b_prev) {
    bool ok = true;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = w_y0 * y0[i] + mu * yjm1[i] + nu * yjm2[i] + hmt * (fj[i] - b_prev * f0[i]);
        ok = ok && std::isfinite(out[i]);
    }
    return ok;
}

bool stage_update(std::span<double> out, std::span<const double> y0,
                  std::span<const double> yjm1, std::span<const double> yjm2,
                  std::span<const double> fj, std::span<const double> f0,
                  double w_y0, double mu, double nu, double hmt, double b_prev) {
    const std::ptrdiff_t n = std::ptrdiff_t(out.size());
    bool ok = true;
#pragma omp parallel for reduction(&& : ok) if (n >= kParallelGrain)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = w_y0 * y0[i] + mu * yjm1[i] + nu * yjm2[i] + hmt * (fj[i] - b_prev * f0[i]);
        ok = ok && std::isfinite(out[i]);
    }
    return ok;
}

bool final_combine_serial(std::span<double> out, std::span<const double> y0,
                          std::span<const double> ys, std::span<const double> ysm2,
                          std::span<const double> f0, double w_y0, double w_s, double w_sm2,
                          double h_coeff) {
    bool ok = true;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = w_y0 * y0[i] + w_s * ys[i] + w_sm2 * ysm2[i] + h_coeff * f0[i];
        ok = ok && std::isfinite(out[i]);
    }
    return ok;
}

bool final_combine(std::span<double> out, std::span<const double> y0,
                   std::span<const double> ys, std::span<const double> ysm2,
                   std::span<const double> f0, double w_y0, double w_s, double w_sm2,
                   double h_coeff) {
    const std::ptrdiff_t n = std::ptrdiff_t(out.size());
    bool ok = true;
#pragma omp parallel for reduction(&& : ok) if (n >= kParallelGrain)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        out[i] = w_y0 * y0[i] + w_s * ys[i] + w_sm2 * ysm2[i] + h_coeff * f0[i];
        ok = ok && std::isfinite(out[i]);
    }
    return ok;
}

}  // namespace mono::kernels
