#include "mono/chebyshev.hpp"

#include <cmath>
#include <stdexcept>

namespace mono {

namespace {

void check_args(int n, double x) {
    if (n < 0) throw std::domain_error("chebyshev: negative degree");
    if (!std::isfinite(x)) throw std::domain_error("chebyshev: non-finite argument");
}

}  // namespace

double cheb_T(int n, double x) {
    check_args(n, x);
    if (n == 0) return 1.0;
    if (std::fabs(x) <= 1.0) return std::cos(n * std::acos(x));
    double sign = 1.0;
    if (x < 0.0) {
        x = -x;
        if (n % 2 != 0) sign = -1.0;
    }
    return sign * std::cosh(n * std::acosh(x));
}

double cheb_T_prime(int n, double x) {
    check_args(n, x);
    if (n == 0) return 0.0;
    if (n == 1) return 1.0;
    const double ax = std::fabs(x);
    if (ax == 1.0) {
        // T'_n(1) = n^2; odd parity of the derivative at -1
        double v = double(n) * double(n);
        if (x < 0.0 && n % 2 == 0) v = -v;
        return v;
    }
    if (ax < 1.0) {
        const double th = std::acos(x);
        return n * std::sin(n * th) / std::sin(th);
    }
    double sign = 1.0;
    if (x < 0.0 && n % 2 == 0) sign = -1.0;
    const double a = std::acosh(ax);
    return sign * n * std::sinh(n * a) / std::sinh(a);
}

double cheb_T_second(int n, double x) {
    check_args(n, x);
    if (n <= 1) return 0.0;
    const double ax = std::fabs(x);
    // limit of (x T' - n^2 T)/(1 - x^2) as x -> +-1
    if (std::fabs(ax - 1.0) < 1e-12) {
        double v = double(n) * double(n) * (double(n) * double(n) - 1.0) / 3.0;
        if (x < 0.0 && n % 2 != 0) v = -v;
        return v;
    }
    // from (1-x^2) T'' - x T' + n^2 T = 0
    return (x * cheb_T_prime(n, x) - double(n) * double(n) * cheb_T(n, x)) / (1.0 - x * x);
}

double cheb_T_third(int n, double x) {
    check_args(n, x);
    if (n <= 2) return 0.0;
    if (std::fabs(std::fabs(x) - 1.0) < 1e-8)
        throw std::domain_error("cheb_T_third: argument too close to +-1");
    // differentiating the Chebyshev ODE: (1-x^2) T''' - 3x T'' + (n^2-1) T' = 0
    return (3.0 * x * cheb_T_second(n, x) - (double(n) * double(n) - 1.0) * cheb_T_prime(n, x)) /
           (1.0 - x * x);
}

std::complex<double> cheb_T_complex(int n, std::complex<double> z) {
    if (n < 0) throw std::domain_error("chebyshev: negative degree");
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
        throw std::domain_error("chebyshev: non-finite argument");
    if (n == 0) return {1.0, 0.0};
    std::complex<double> tkm1 = 1.0, tk = z;
    for (int k = 2; k <= n; ++k) {
        std::complex<double> t = 2.0 * z * tk - tkm1;
        tkm1 = tk;
        tk = t;
    }
    return tk;
}

double cheb_T_prime_cosh(int n, double a) {
    if (n == 0) return 0.0;
    if (a == 0.0) return double(n) * double(n);
    return n * std::sinh(n * a) / std::sinh(a);
}

double cheb_T_second_cosh(int n, double a) {
    if (n <= 1) return 0.0;
    if (a == 0.0) return double(n) * double(n) * (double(n) * double(n) - 1.0) / 3.0;
    const double sh = std::sinh(a);
    return (double(n) * double(n) * std::cosh(n * a) -
            std::cosh(a) * n * std::sinh(n * a) / sh) /
           (sh * sh);
}

}  // namespace mono
