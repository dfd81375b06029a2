#include "mono/driver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "mono/tableau.hpp"

namespace mono {

namespace {

double norm2(std::span<const double> v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

// fit constants for s ~ a + b rho^c, least-squares over the computed
// methods with the tolerance bands weighted (absolute below s = 100,
// relative above); worst deviation 0.46 stages / 0.46%
constexpr double kFitA = -0.944406137321182;
constexpr double kFitB = 1.774309723362834;
constexpr double kFitC = 0.53736;

constexpr double kRhoSafety = 1.2;

}  // namespace

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Success: return "success";
        case SolveStatus::StepUnderflow: return "step-underflow";
        case SolveStatus::NonFiniteState: return "non-finite-state";
        case SolveStatus::StageCapExceeded: return "stage-cap-exceeded";
    }
    return "unknown";
}

SpectralRadiusEstimate estimate_spectral_radius(const RhsFn& f, double x,
                                                std::span<const double> y,
                                                std::span<const double> fy,
                                                const std::vector<double>* seed, double uround) {
    const std::size_t n = y.size();
    SpectralRadiusEstimate out;
    const double ynrm = norm2(y);
    const double delta = ynrm > 0.0 ? std::sqrt(uround) * ynrm : std::sqrt(uround);

    // starting direction: warm-start vector, else the derivative, else ones
    std::vector<double> dir;
    if (seed && seed->size() == n && norm2(*seed) > 0.0) dir = *seed;
    else {
        dir.assign(fy.begin(), fy.end());
        if (norm2(dir) == 0.0) dir.assign(n, 1.0);
    }
    const double dn = norm2(dir);
    std::vector<double> v(n), fv(n);
    for (std::size_t i = 0; i < n; ++i) v[i] = y[i] + delta * dir[i] / dn;

    double prev = 0.0;
    for (int it = 0; it < 50; ++it) {
        f(x, v, fv);
        ++out.f_evals;
        double dnorm = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            fv[i] -= fy[i];
            dnorm += fv[i] * fv[i];
        }
        dnorm = std::sqrt(dnorm);
        if (dnorm == 0.0) {
            out.rho = 0.0;
            out.eigvec = std::move(dir);
            return out;
        }
        const double est = dnorm / delta;
        if (it > 0 && std::fabs(est - prev) < 0.01 * est) {
            out.rho = kRhoSafety * est;
            for (std::size_t i = 0; i < n; ++i) dir[i] = fv[i] / dnorm;
            out.eigvec = std::move(dir);
            return out;
        }
        prev = est;
        for (std::size_t i = 0; i < n; ++i) {
            dir[i] = fv[i] / dnorm;
            v[i] = y[i] + delta * dir[i];
        }
    }
    out.rho = kRhoSafety * prev;
    out.eigvec = std::move(dir);
    out.converged = false;
    return out;
}

double stage_count_fit(double z) { return kFitA + kFitB * std::pow(z, kFitC); }

int select_stage_count(double z, int s_max) {
    if (!(z >= 0.0)) throw std::invalid_argument("select_stage_count: need z >= 0");
    if (s_max < 3) throw std::invalid_argument("select_stage_count: need s_max >= 3");
    if (z == 0.0) return 3;
    int s = std::clamp(int(std::lround(stage_count_fit(z))), 3, s_max);
    while (cached_tableau(s).rho < z) {
        if (s == s_max) return -1;
        ++s;
    }
    while (s > 3 && cached_tableau(s - 1).rho >= z) --s;
    return s;
}

InitialStep initial_step_size(const RhsFn& f, double x0, std::span<const double> y0,
                              std::span<const double> f0, double span_len, double rho0,
                              std::span<const double> atol, std::span<const double> rtol) {
    const std::size_t n = y0.size();
    InitialStep out;
    out.h = span_len / 10.0;
    if (rho0 > 1e-14) out.h = std::min(out.h, 1.0 / rho0);

    if (norm2(f0) == 0.0) {
        out.h = span_len / 10.0;
        return out;
    }
    std::vector<double> yt(n), ft(n);
    for (std::size_t i = 0; i < n; ++i) yt[i] = y0[i] + out.h * f0[i];
    f(x0 + out.h, yt, ft);
    out.f_evals = 1;
    double sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = atol.size() == 1 ? atol[0] : atol[i];
        const double r = rtol.size() == 1 ? rtol[0] : rtol[i];
        const double q = (ft[i] - f0[i]) / (a + r * std::fabs(y0[i]));
        sum += q * q;
    }
    const double curvature = std::sqrt(sum / double(n)) / out.h;
    if (curvature > 0.0) out.h = std::min(out.h, std::sqrt(2.0 / curvature));
    out.h = std::max(out.h, 1e-12 * span_len);
    return out;
}

double step_size_update(double err_now, std::optional<double> err_prev, double h_now,
                        double h_prev, double safety, double fac_min, double fac_max) {
    double fac;
    if (err_now <= 0.0) {
        fac = fac_max;
    } else {
        fac = safety / std::sqrt(err_now);
        if (err_prev) {
            const double ep = std::max(*err_prev, 1e-10);
            const double en = std::max(err_now, 1e-10);
            fac *= std::sqrt(ep / en) * (h_now / h_prev);
        }
    }
    return std::clamp(fac, fac_min, fac_max) * h_now;
}

IntegrationReport integrate(const RhsFn& f, const OdeProblem& p, const SolverConfig& cfg) {
    if (!(cfg.atol > 0.0) || !(cfg.rtol > 0.0))
        throw std::invalid_argument("integrate: tolerances must be positive");
    if (!(cfg.fac_min > 0.0 && cfg.fac_min < 1.0 && cfg.fac_max > 1.0))
        throw std::invalid_argument("integrate: need 0 < fac_min < 1 < fac_max");
    if (!(cfg.safety > 0.0 && cfg.safety < 1.0))
        throw std::invalid_argument("integrate: need 0 < safety < 1");
    if (cfg.s_max < 3) throw std::invalid_argument("integrate: need s_max >= 3");
    if (!(p.x_end > p.x0)) throw std::invalid_argument("integrate: degenerate span");

    const auto t_start = std::chrono::steady_clock::now();
    const std::size_t n = std::size_t(p.n);
    const double span = p.x_end - p.x0;

    IntegrationReport rep;
    double x = p.x0;
    std::vector<double> y = p.y0;
    std::vector<double> f0(n), f1(n), y1(n), yemb(n), est(n);
    StepWorkspace ws;

    const std::span<const double> atol =
        cfg.atol_vec.empty() ? std::span<const double>(&cfg.atol, 1)
                             : std::span<const double>(cfg.atol_vec);
    const std::span<const double> rtol =
        cfg.rtol_vec.empty() ? std::span<const double>(&cfg.rtol, 1)
                             : std::span<const double>(cfg.rtol_vec);

    auto finish = [&](SolveStatus st, std::string msg) {
        rep.status = st;
        rep.message = std::move(msg);
        rep.x_final = x;
        rep.y_final = y;
        rep.elapsed_sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
        return rep;
    };

    f(x, y, f0);
    rep.n_f = 1;

    const bool analytic = cfg.use_analytic_rho && bool(p.rho_bound);
    std::vector<double> rho_seed;
    double rho = 0.0;
    auto refresh_rho = [&]() {
        if (analytic) {
            rho = p.rho_bound(x, y);
        } else {
            auto e = estimate_spectral_radius(f, x, y, f0, rho_seed.empty() ? nullptr : &rho_seed,
                                              cfg.uround);
            ++rep.n_rho;
            rep.n_f += e.f_evals;
            rho_seed = std::move(e.eigvec);
            rho = e.rho;
        }
    };
    refresh_rho();

    double h;
    if (cfg.h_init > 0.0) {
        h = cfg.h_init;
    } else {
        auto is = initial_step_size(f, x, y, f0, span, rho, atol, rtol);
        rep.n_f += is.f_evals;
        h = is.h;
    }
    h = std::min(h, span);

    std::optional<double> err_prev;
    double h_prev = h;
    long steps_since_rho = 0;
    const auto underflow = [&]() { return h < 16.0 * cfg.uround * std::max(std::fabs(x), 1.0); };

    while (true) {
        bool final_step = false;
        if (x + h >= p.x_end) {
            h = p.x_end - x;
            final_step = true;
        }

        int s = select_stage_count(h * rho, cfg.s_max);
        if (s < 0) {
            const double h_cap = 0.95 * cached_tableau(cfg.s_max).rho / rho;
            if (h_cap >= h || underflow())
                return finish(SolveStatus::StageCapExceeded,
                              "stage cap insufficient at x=" + std::to_string(x));
            h = h_cap;
            continue;
        }
        const MethodTableau& tab = cached_tableau(s);

        auto sr = mono_step(f, tab, x, y, f0, h, y1, yemb, ws);
        rep.n_f += sr.f_evals;
        double err = -1.0;
        bool blew_up = !sr.ok;
        if (!blew_up) {
            f(x + h, y1, f1);
            ++rep.n_f;
            estimate_error(y, y1, f1, h, est);
            err = error_norm(est, y, y1, atol, rtol);
            blew_up = !std::isfinite(err);
        }
        rep.s_max_used = std::max(rep.s_max_used, s);

        if (blew_up) {
            ++rep.n_rejected;
            h *= cfg.fac_min;
            err_prev.reset();
            if (underflow())
                return finish(SolveStatus::NonFiniteState,
                              "non-finite values persist at x=" + std::to_string(x));
            if (!analytic) {
                refresh_rho();
                steps_since_rho = 0;
            }
            continue;
        }

        if (err <= 1.0) {
            ++rep.n_accepted;
            ++steps_since_rho;
            x = final_step ? p.x_end : x + h;
            std::swap(y, y1);
            std::swap(f0, f1);  // FSAL: the estimate derivative opens the next step
            if (x >= p.x_end) return finish(SolveStatus::Success, "");
            const double h_new = step_size_update(err, err_prev, h, h_prev, cfg.safety,
                                                  cfg.fac_min, cfg.fac_max);
            err_prev = err;
            h_prev = h;
            h = h_new;
            if (analytic) {
                rho = p.rho_bound(x, y);
            } else if (steps_since_rho >= cfg.rho_period) {
                refresh_rho();
                steps_since_rho = 0;
            }
        } else {
            ++rep.n_rejected;
            h = step_size_update(err, std::nullopt, h, h, cfg.safety, cfg.fac_min,
                                 std::min(cfg.fac_max, 1.0));
            err_prev.reset();
            if (err > 10.0 && !analytic) {
                refresh_rho();
                steps_since_rho = 0;
            }
            if (underflow())
                return finish(SolveStatus::StepUnderflow,
                              "step size underflow at x=" + std::to_string(x));
        }
    }
}

}  // namespace mono
