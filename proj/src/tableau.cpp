#include "mono/tableau.hpp"

#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

#include "mono/chebyshev.hpp"

namespace mono {

namespace {

// Left- and right-hand sides of the w0 equation, written entirely in
// a = arccosh(w0) so every Chebyshev value is cosh(k*a) and stays
// O(1)-conditioned even when w0 - 1 ~ 1e-5.
struct ShiftEquation {
    int s;
    double lhs(double a) const {
        const double sign = (s % 2 == 0) ? 1.0 : -1.0;
        return 1.0 + sign / (double(s) * (s - 2)) + std::cosh(a) +
               std::cosh(s * a) / (2.0 * s) - std::cosh((s - 2) * a) / (2.0 * (s - 2));
    }
    double rhs(double a) const {
        const double t = 1.0 + std::cosh((s - 1) * a);
        return t * t * std::sinh(a) / ((s - 1) * std::sinh((s - 1) * a));
    }
    double residual(double a) const { return lhs(a) - rhs(a); }
    double scaled_residual(double a) const {
        const double l = lhs(a), r = rhs(a);
        return (l - r) / std::max({1.0, std::fabs(l), std::fabs(r)});
    }
};

}  // namespace

double shift_equation_residual(int s, double a) {
    return ShiftEquation{s}.scaled_residual(a);
}

double solve_shift_param(int s) {
    if (s < 3) throw std::invalid_argument("solve_shift_param: stage count must be >= 3");
    const ShiftEquation eq{s};

    // Initial bracket [eps, 3/(s-1)], expanded geometrically until the
    // residual changes sign.  The residual is positive at a -> 0+.
    double lo = 1e-8;
    double hi = 3.0 / (s - 1);
    double flo = eq.residual(lo);
    double fhi = eq.residual(hi);
    const double a_cap = 600.0 / s;  // keep cosh(s*a) finite
    int expand = 0;
    while (flo * fhi > 0.0) {
        if (++expand > 200 || hi >= a_cap)
            throw std::runtime_error("solve_shift_param: bracket expansion failed");
        lo = hi;
        flo = fhi;
        hi = std::min(hi * 1.5, a_cap);
        fhi = eq.residual(hi);
    }

    // Safeguarded Newton: numerical derivative, bisection fallback whenever
    // the Newton step leaves the bracket or stalls.
    double a = 0.5 * (lo + hi);
    for (int it = 0; it < 200; ++it) {
        const double f = eq.residual(a);
        if (f == 0.0) break;
        if (f * flo > 0.0) {
            lo = a;
            flo = f;
        } else {
            hi = a;
            fhi = f;
        }
        const double width = hi - lo;
        if (width <= 4.0 * std::numeric_limits<double>::epsilon() * lo) break;
        const double da = std::max(1e-10, 1e-7 * a);
        const double deriv = (eq.residual(a + da) - eq.residual(a - da)) / (2.0 * da);
        double next = (deriv != 0.0) ? a - f / deriv : a;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (next == a) next = 0.5 * (lo + hi);
        a = next;
    }

    if (std::fabs(eq.scaled_residual(a)) > 1e-12)
        throw std::runtime_error("solve_shift_param: residual tolerance unreachable for s=" +
                                 std::to_string(s));
    return a;
}

double solve_w0(int s) { return std::cosh(solve_shift_param(s)); }

MethodTableau build_tableau(int s) {
    MethodTableau tab;
    tab.s = s;
    tab.a = solve_shift_param(s);
    const double a = tab.a;
    tab.w0 = std::cosh(a);
    tab.w1 = (1.0 + std::cosh((s - 1) * a)) * std::sinh(a) / ((s - 1) * std::sinh((s - 1) * a));
    tab.rho = (1.0 + tab.w0) / tab.w1;

    tab.b.resize(s + 1);
    for (int j = 0; j <= s; ++j) tab.b[j] = 1.0 / (1.0 + std::cosh(j * a));

    tab.mu.assign(s + 1, 0.0);
    tab.nu.assign(s + 1, 0.0);
    tab.mu_tilde.assign(s + 1, 0.0);
    for (int j = 2; j <= s; ++j) {
        tab.mu[j] = 2.0 * tab.w0 * tab.b[j] / tab.b[j - 1];
        tab.nu[j] = -tab.b[j] / tab.b[j - 2];
        tab.mu_tilde[j] = 2.0 * tab.w1 * tab.b[j] / tab.b[j - 1];
    }

    const double bsm1 = tab.b[s - 1];
    tab.gamma_s = bsm1 / (2.0 * s * tab.w1);
    tab.delta_s = -bsm1 / (2.0 * (s - 2) * tab.w1);
    const double sign = (s % 2 == 0) ? 1.0 : -1.0;
    tab.alpha_s = bsm1 / tab.w1 * (1.0 + sign / (double(s) * (s - 2)) + tab.w0);

    // abscissae by the closed form c_j = w1 b_j T'_j(w0); c_{s-1} = 1 by
    // construction of w1
    tab.c.resize(s);
    tab.c[0] = 0.0;
    for (int j = 1; j < s; ++j) tab.c[j] = tab.w1 * tab.b[j] * cheb_T_prime_cosh(j, a);

    tab.err_const = (1.0 - bsm1 * tab.w1 * tab.w1 * cheb_T_second_cosh(s - 1, a)) / 6.0;
    return tab;
}

const MethodTableau& cached_tableau(int s) {
    static std::mutex mtx;
    static std::map<int, std::unique_ptr<const MethodTableau>> cache;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(s);
    if (it == cache.end())
        it = cache.emplace(s, std::make_unique<const MethodTableau>(build_tableau(s))).first;
    return *it->second;
}

StabilitySample eval_stability(const MethodTableau& tab, std::complex<double> z,
                               bool keep_internal) {
    StabilitySample out;
    out.z = z;
    const int s = tab.s;
    std::complex<double> rjm2 = 1.0;                       // R~_0
    std::complex<double> rjm1 = 1.0 + tab.b[1] * tab.w1 * z;  // R~_1
    std::complex<double> rj = rjm1;
    std::complex<double> r_sm2 = (s == 2) ? rjm2 : 0.0;
    std::complex<double> r_sm1 = 0.0;
    if (keep_internal) {
        out.internal.reserve(s + 1);
        out.internal.push_back(rjm2);
        out.internal.push_back(rjm1);
    }
    for (int j = 2; j <= s; ++j) {
        rj = 1.0 + tab.mu[j] * (rjm1 - 1.0) + tab.nu[j] * (rjm2 - 1.0) +
             tab.mu_tilde[j] * z * (rjm1 - tab.b[j - 1]);
        if (keep_internal) out.internal.push_back(rj);
        if (j == s - 2) r_sm2 = rj;
        if (j == s - 1) r_sm1 = rj;
        rjm2 = rjm1;
        rjm1 = rj;
    }
    if (s == 3) r_sm2 = 1.0 + tab.b[1] * tab.w1 * z;  // R~_1
    out.R = 1.0 + tab.b[s - 1] * z + tab.gamma_s / tab.b[s] * (rj - 1.0) +
            tab.delta_s / tab.b[s - 2] * (r_sm2 - 1.0);
    out.Rprime = r_sm1;
    return out;
}

std::complex<double> eval_stability_direct(const MethodTableau& tab, std::complex<double> z) {
    const int s = tab.s;
    const double ts_w0 = std::cosh(s * tab.a);
    const double tsm2_w0 = std::cosh((s - 2) * tab.a);
    if (z.imag() == 0.0) {
        const double x = tab.w0 + tab.w1 * z.real();
        return 1.0 + tab.b[s - 1] * z.real() + tab.gamma_s * (cheb_T(s, x) - ts_w0) +
               tab.delta_s * (cheb_T(s - 2, x) - tsm2_w0);
    }
    const std::complex<double> arg = tab.w0 + tab.w1 * z;
    return 1.0 + tab.b[s - 1] * z + tab.gamma_s * (cheb_T_complex(s, arg) - ts_w0) +
           tab.delta_s * (cheb_T_complex(s - 2, arg) - tsm2_w0);
}

double error_constant(const MethodTableau& tab) { return tab.err_const; }

MonotonicityScan monotonicity_scan(const MethodTableau& tab, int m) {
    if (m < 2) throw std::invalid_argument("monotonicity_scan: need m >= 2");
    MonotonicityScan scan;
    scan.min_Rprime = std::numeric_limits<double>::infinity();
    scan.min_R = std::numeric_limits<double>::infinity();
    scan.min_internal = std::numeric_limits<double>::infinity();
    scan.max_internal_interior = -std::numeric_limits<double>::infinity();
    const int s = tab.s;
    for (int k = 0; k < m; ++k) {
        const double z = -tab.rho * double(m - 1 - k) / m;
        // real-arithmetic copy of the stage recurrence
        double rjm2 = 1.0;
        double rjm1 = 1.0 + tab.b[1] * tab.w1 * z;
        double rj = rjm1;
        double r_sm2 = rjm1, r_sm1 = rjm1;
        scan.min_internal = std::min(scan.min_internal, rjm1);
        if (z < 0.0) scan.max_internal_interior = std::max(scan.max_internal_interior, rjm1);
        for (int j = 2; j <= s; ++j) {
            rj = 1.0 + tab.mu[j] * (rjm1 - 1.0) + tab.nu[j] * (rjm2 - 1.0) +
                 tab.mu_tilde[j] * z * (rjm1 - tab.b[j - 1]);
            scan.min_internal = std::min(scan.min_internal, rj);
            if (z < 0.0) scan.max_internal_interior = std::max(scan.max_internal_interior, rj);
            if (j == s - 2) r_sm2 = rj;
            if (j == s - 1) r_sm1 = rj;
            rjm2 = rjm1;
            rjm1 = rj;
        }
        const double R = 1.0 + tab.b[s - 1] * z + tab.gamma_s / tab.b[s] * (rj - 1.0) +
                         tab.delta_s / tab.b[s - 2] * (r_sm2 - 1.0);
        scan.min_R = std::min(scan.min_R, R);
        scan.min_Rprime = std::min(scan.min_Rprime, r_sm1);
    }
    return scan;
}

std::vector<double> stability_region_grid(const MethodTableau& tab, double re_lo, double re_hi,
                                          double im_lo, double im_hi, int nx, int ny) {
    if (nx < 2 || ny < 2) throw std::invalid_argument("stability_region_grid: need nx, ny >= 2");
    std::vector<double> grid(std::size_t(nx) * ny);
    for (int iy = 0; iy < ny; ++iy) {
        const double im = im_lo + (im_hi - im_lo) * iy / (ny - 1);
        for (int ix = 0; ix < nx; ++ix) {
            const double re = re_lo + (re_hi - re_lo) * ix / (nx - 1);
            grid[std::size_t(iy) * nx + ix] = std::abs(eval_stability(tab, {re, im}).R);
        }
    }
    return grid;
}

std::complex<double> rkc2_reference_polynomial(int s, double damping, std::complex<double> z) {
    if (s < 2) throw std::invalid_argument("rkc2_reference_polynomial: need s >= 2");
    const double w0 = 1.0 + damping / (double(s) * s);
    const double tp = cheb_T_prime(s, w0);
    const double tpp = cheb_T_second(s, w0);
    const double w1 = tp / tpp;
    const double bs = tpp / (tp * tp);
    const double as = 1.0 - bs * cheb_T(s, w0);
    if (z.imag() == 0.0) return as + bs * cheb_T(s, w0 + w1 * z.real());
    return as + bs * cheb_T_complex(s, w0 + w1 * z);
}

double rkc2_error_constant(int s, double damping) {
    const double w0 = 1.0 + damping / (double(s) * s);
    const double tp = cheb_T_prime(s, w0);
    const double tpp = cheb_T_second(s, w0);
    const double w1 = tp / tpp;
    const double bs = tpp / (tp * tp);
    const double rppp0 = bs * w1 * w1 * w1 * cheb_T_third(s, w0);
    return (1.0 - rppp0) / 6.0;
}

}  // namespace mono
