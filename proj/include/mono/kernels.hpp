#ifndef MONO_KERNELS_HPP
#define MONO_KERNELS_HPP

#include <span>

namespace mono::kernels {

// Vector kernels of the stage recurrence.  Each has a serial reference
// twin used by the tests and the benchmark; the OpenMP versions are
// element-wise (no reductions except an order-independent finiteness AND),
// so parallel and serial results are bitwise identical.

// Minimum length before the OpenMP versions fan out.
inline constexpr std::ptrdiff_t kParallelGrain = 4096;

// out = y0 + h_coeff * f0  (first stage).  Returns true iff all outputs finite.
bool first_stage(std::span<double> out, std::span<const double> y0,
                 std::span<const double> f0, double h_coeff);
bool first_stage_serial(std::span<double> out, std::span<const double> y0,
                        std::span<const double> f0, double h_coeff);

// out = w_y0*y0 + mu*yjm1 + nu*yjm2 + hmt*(fj - b_prev*f0)
bool stage_update(std::span<double> out, std::span<const double> y0,
                  std::span<const double> yjm1, std::span<const double> yjm2,
                  std::span<const double> fj, std::span<const double> f0,
                  double w_y0, double mu, double nu, double hmt, double b_prev);
bool stage_update_serial(std::span<double> out, std::span<const double> y0,
                         std::span<const double> yjm1, std::span<const double> yjm2,
                         std::span<const double> fj, std::span<const double> f0,
                         double w_y0, double mu, double nu, double hmt, double b_prev);

// out = w_y0*y0 + w_s*ys + w_sm2*ysm2 + h_coeff*f0  (final combination)
bool final_combine(std::span<double> out, std::span<const double> y0,
                   std::span<const double> ys, std::span<const double> ysm2,
                   std::span<const double> f0, double w_y0, double w_s, double w_sm2,
                   double h_coeff);
bool final_combine_serial(std::span<double> out, std::span<const double> y0,
                          std::span<const double> ys, std::span<const double> ysm2,
                          std::span<const double> f0, double w_y0, double w_s, double w_sm2,
                          double h_coeff);

}  // namespace mono::kernels

#endif
