#ifndef MONO_CHEBYSHEV_HPP
#define MONO_CHEBYSHEV_HPP

#include <cmath>
#include <complex>

namespace mono {

// Chebyshev polynomials of the first kind, T_n, evaluated through
// trigonometric / hyperbolic closed forms.  The closed forms stay accurate
// for n in the thousands with arguments barely above 1, where the raw
// three-term recurrence amplifies rounding.

// T_n(x).  |x| <= 1 uses cos(n acos x), x > 1 uses cosh(n acosh x),
// x < -1 follows by parity.
double cheb_T(int n, double x);

// T'_n(x) = n U_{n-1}(x), with the n^2 limit at x = +-1.
double cheb_T_prime(int n, double x);

// T''_n(x); at x = +-1 returns the analytic limit n^2(n^2-1)/3 (signed).
double cheb_T_second(int n, double x);

// T'''_n(x) away from x = +-1 (used for error-constant comparisons).
double cheb_T_third(int n, double x);

// T_n(z) for complex z via the three-term recurrence.  Adequate for the
// moderate degrees used in stability-region sampling.
std::complex<double> cheb_T_complex(int n, std::complex<double> z);

// cosh(n*a) and friends in the shift parameterization a = arccosh(w0).
// These are what tableau construction uses internally so that nothing is
// ever evaluated at an argument squashed against 1.
inline double cheb_T_cosh(int n, double a) { return std::cosh(n * a); }
double cheb_T_prime_cosh(int n, double a);   // T'_n(cosh a)
double cheb_T_second_cosh(int n, double a);  // T''_n(cosh a)

}  // namespace mono

#endif
