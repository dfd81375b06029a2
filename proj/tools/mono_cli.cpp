// Command-line harness: benchmark runs with Table-style statistics,
// coefficient dumps, stability-polynomial and stability-region plot data,
// stage-count fit diagnostics, and reference-solution maintenance.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "mono/driver.hpp"
#include "mono/problems.hpp"
#include "mono/tableau.hpp"

namespace {

constexpr int kExitBadArgs = 2;
constexpr int kExitSolverAbort = 3;

const std::vector<int> kDefaultStages = {3, 5, 10, 20, 50, 100, 200, 500, 1000, 2000};
const std::vector<std::string> kRefProblems = {"cusp", "finag", "burgers", "comb"};

struct RunRecord {
    std::string problem;
    std::string method;
    double tol = 0;
    double err = 0;
    bool have_err = false;
    long n_f = 0, n_accepted = 0, n_rejected = 0;
    double elapsed_ms = 0;
};

void print_records(const std::vector<RunRecord>& recs, const std::string& format) {
    if (format == "json") {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& r : recs) {
            nlohmann::json j;
            j["problem"] = r.problem;
            j["method"] = r.method;
            j["tol"] = r.tol;
            if (r.have_err) j["err"] = r.err;
            else j["err"] = nullptr;
            j["n_f"] = r.n_f;
            j["n_accepted"] = r.n_accepted;
            j["n_rejected"] = r.n_rejected;
            j["elapsed_ms"] = r.elapsed_ms;
            arr.push_back(j);
        }
        std::printf("%s\n", arr.dump(2).c_str());
        return;
    }
    if (format == "csv") {
        std::printf("problem,method,tol,err,n_f,n_accepted,n_rejected,elapsed_ms\n");
        for (const auto& r : recs) {
            char errbuf[32];
            if (r.have_err) std::snprintf(errbuf, sizeof errbuf, "%.8e", r.err);
            else std::snprintf(errbuf, sizeof errbuf, "nan");
            std::printf("%s,%s,%g,%s,%ld,%ld,%ld,%.3f\n", r.problem.c_str(), r.method.c_str(),
                        r.tol, errbuf, r.n_f, r.n_accepted, r.n_rejected, r.elapsed_ms);
        }
        return;
    }
    std::printf("%-10s %-6s %-8s %-12s %8s %8s %8s %10s\n", "problem", "method", "tol", "err",
                "n_f", "accpt", "rejct", "ms");
    for (const auto& r : recs) {
        char errbuf[32];
        if (r.have_err) std::snprintf(errbuf, sizeof errbuf, "%.4e", r.err);
        else std::snprintf(errbuf, sizeof errbuf, "n/a");
        std::printf("%-10s %-6s %-8g %-12s %8ld %8ld %8ld %10.2f\n", r.problem.c_str(),
                    r.method.c_str(), r.tol, errbuf, r.n_f, r.n_accepted, r.n_rejected,
                    r.elapsed_ms);
    }
}

int cmd_solve(const std::vector<std::string>& problems, const std::vector<double>& tols,
              std::optional<double> atol, bool rho_analytic, double seed_h,
              const std::string& format) {
    std::vector<RunRecord> recs;
    for (const auto& name : problems) {
        mono::OdeProblem p;
        try {
            p = mono::make_problem(name);
        } catch (const std::invalid_argument& e) {
            std::fprintf(stderr, "error: %s\n", e.what());
            return kExitBadArgs;
        }
        for (double tol : tols) {
            mono::SolverConfig cfg;
            cfg.rtol = tol;
            cfg.atol = atol.value_or(tol);
            cfg.use_analytic_rho = rho_analytic;
            cfg.h_init = seed_h;
            auto rep = mono::integrate(p, cfg);
            if (rep.status != mono::SolveStatus::Success) {
                std::fprintf(stderr, "error: solver abort on %s (tol %g): %s (%s)\n",
                             name.c_str(), tol, mono::to_string(rep.status),
                             rep.message.c_str());
                return kExitSolverAbort;
            }
            RunRecord r;
            r.problem = name;
            r.method = "mono";
            r.tol = tol;
            try {
                auto ref = mono::reference_solution(p);
                r.err = mono::euclidean_error(rep.y_final, ref);
                r.have_err = true;
            } catch (const std::runtime_error&) {
                r.have_err = false;
            }
            r.n_f = rep.n_f;
            r.n_accepted = rep.n_accepted;
            r.n_rejected = rep.n_rejected;
            r.elapsed_ms = rep.elapsed_sec * 1e3;
            recs.push_back(std::move(r));
        }
    }
    print_records(recs, format);
    return 0;
}

int cmd_table1(const std::vector<int>& stages) {
    std::printf("%6s %14s %12s %12s %14s %14s %14s %14s\n", "s", "rho_s", "C_s", "w0", "w1",
                "b_{s-1}", "gamma_s", "-delta_s");
    for (int s : stages) {
        const auto& t = mono::cached_tableau(s);
        std::printf("%6d %14.8g %12.7g %12.8g %14.8g %14.7g %14.7g %14.7g\n", s, t.rho,
                    t.err_const, t.w0, t.w1, t.b[s - 1], t.gamma_s, -t.delta_s);
    }
    return 0;
}

int cmd_dump_polynomial(int s, int m, bool compare_rkc) {
    const auto& tab = mono::cached_tableau(s);
    std::printf("x,R");
    for (int j = 0; j <= s; ++j) std::printf(",Rt%d", j);
    if (compare_rkc) std::printf(",RKC2");
    std::printf("\n");
    const double lo = -1.05 * tab.rho;
    for (int k = 0; k < m; ++k) {
        const double x = lo * (1.0 - double(k) / (m - 1));
        auto sample = mono::eval_stability(tab, x, true);
        std::printf("%.12g,%.12g", x, sample.R.real());
        for (const auto& r : sample.internal) std::printf(",%.12g", r.real());
        if (compare_rkc)
            std::printf(",%.12g",
                        mono::rkc2_reference_polynomial(s, mono::kRkcDefaultDamping, x).real());
        std::printf("\n");
    }
    return 0;
}

int cmd_dump_region(int s, double re_lo, double re_hi, double im_lo, double im_hi, int nx,
                    int ny) {
    const auto& tab = mono::cached_tableau(s);
    auto grid = mono::stability_region_grid(tab, re_lo, re_hi, im_lo, im_hi, nx, ny);
    std::printf("im\\re");
    for (int ix = 0; ix < nx; ++ix)
        std::printf(",%.12g", re_lo + (re_hi - re_lo) * ix / (nx - 1));
    std::printf("\n");
    for (int iy = 0; iy < ny; ++iy) {
        std::printf("%.12g", im_lo + (im_hi - im_lo) * iy / (ny - 1));
        for (int ix = 0; ix < nx; ++ix)
            std::printf(",%.12g", grid[std::size_t(iy) * nx + ix]);
        std::printf("\n");
    }
    return 0;
}

int cmd_fit_check() {
    std::printf("%6s %14s %10s %10s %6s\n", "s", "rho_s", "fit", "selected", "diff");
    double max_abs_small = 0, max_rel_large = 0;
    for (int s : kDefaultStages) {
        const double rho = mono::cached_tableau(s).rho;
        const double fit = mono::stage_count_fit(rho);
        const int sel = mono::select_stage_count(rho, 4000);
        const double diff = fit - s;
        std::printf("%6d %14.8g %10.2f %10d %6.2f\n", s, rho, fit, sel, diff);
        if (s <= 100) max_abs_small = std::max(max_abs_small, std::fabs(diff));
        else max_rel_large = std::max(max_rel_large, std::fabs(diff) / s);
    }
    std::printf("max |fit - s| for s <= 100: %.3f\n", max_abs_small);
    std::printf("max relative fit error for s > 100: %.5f\n", max_rel_large);
    return 0;
}

// Classical fixed-step RK4, used only to cross-check generated references.
std::vector<double> rk4_run(const mono::OdeProblem& p, long nsteps) {
    const std::size_t n = std::size_t(p.n);
    std::vector<double> y = p.y0, k1(n), k2(n), k3(n), k4(n), tmp(n);
    const double h = (p.x_end - p.x0) / double(nsteps);
    double x = p.x0;
    for (long step = 0; step < nsteps; ++step) {
        p.rhs(x, y, k1);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
        p.rhs(x + 0.5 * h, tmp, k2);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
        p.rhs(x + 0.5 * h, tmp, k3);
        for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
        p.rhs(x + h, tmp, k4);
        bool finite = true;
        for (std::size_t i = 0; i < n; ++i) {
            y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
            finite = finite && std::isfinite(y[i]);
        }
        if (!finite) return {};
        x += h;
    }
    return y;
}

double rms_diff(const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s / double(a.size()));
}

int cmd_gen_refs(const std::string& which, const std::string& out_dir) {
    std::vector<std::string> names;
    if (which == "all") names = kRefProblems;
    else names.push_back(which);

    for (const auto& name : names) {
        auto p = mono::make_problem(name);
        std::printf("generating %s (n=%d) ...\n", name.c_str(), p.n);

        mono::SolverConfig cfg;
        cfg.atol = cfg.rtol = 1e-11;
        cfg.use_analytic_rho = true;
        auto rep = mono::integrate(p, cfg);
        if (rep.status != mono::SolveStatus::Success) {
            std::fprintf(stderr, "error: generator run failed for %s: %s\n", name.c_str(),
                         mono::to_string(rep.status));
            return kExitSolverAbort;
        }
        std::printf("  mono@1e-11: n_f=%ld accepted=%ld rejected=%ld\n", rep.n_f,
                    rep.n_accepted, rep.n_rejected);

        // independent cross-check: fixed-step RK4, step count doubled until
        // halving changes the terminal state by < 1e-9 RMS
        const double rho0 = p.rho_bound ? p.rho_bound(p.x0, p.y0) : 1e3;
        long nsteps = std::max<long>(1000, long(1.5 * rho0 * (p.x_end - p.x0) / 2.5));
        std::vector<double> prev;
        for (int iter = 0; iter < 16; ++iter) {
            auto cur = rk4_run(p, nsteps);
            if (!cur.empty() && !prev.empty()) {
                const double d = rms_diff(cur, prev);
                std::printf("  rk4 %ld steps: delta_rms=%.3e\n", nsteps, d);
                if (d < 1e-9) {
                    const double agree = rms_diff(cur, rep.y_final);
                    std::printf("  rk4 vs mono: rms=%.3e\n", agree);
                    if (agree > 1e-7) {
                        std::fprintf(stderr, "error: cross-check mismatch for %s\n",
                                     name.c_str());
                        return kExitSolverAbort;
                    }
                    break;
                }
            }
            prev = std::move(cur);
            nsteps *= 2;
        }

        mono::ReferenceFile ref;
        ref.problem = name;
        ref.n = p.n;
        ref.atol = ref.rtol = 1e-11;
        ref.generator = "mono@1e-11,rk4-crosschecked";
        ref.data = rep.y_final;
        const std::string path = out_dir + "/" + name + ".ref";
        mono::write_reference(path, ref);
        std::printf("  wrote %s\n", path.c_str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Second-order monotonic Runge-Kutta-Chebyshev solver harness"};
    app.require_subcommand(1);

    // solve
    auto* solve = app.add_subcommand("solve", "integrate benchmark problems, print run records");
    std::vector<std::string> problems;
    std::vector<double> tols;
    double atol_opt = -1.0;
    bool rho_analytic = false;
    double seed_h = 0.0;
    std::string format = "table";
    solve->add_option("--problem", problems, "problem name(s)")->required();
    solve->add_option("--tol", tols, "tolerance(s), sets atol=rtol")->required();
    solve->add_option("--atol", atol_opt, "absolute tolerance override");
    solve->add_flag("--rho-analytic", rho_analytic,
                    "use the problem's analytic spectral-radius bound");
    solve->add_option("--seed-h", seed_h, "initial step size");
    solve->add_option("--format", format, "csv|json|table")
        ->check(CLI::IsMember({"csv", "json", "table"}));

    // table1
    auto* table1 = app.add_subcommand("table1", "dump method coefficients per stage count");
    std::vector<int> stages = kDefaultStages;
    table1->add_option("--stages", stages, "stage counts");

    // dump-polynomial
    auto* dumppoly =
        app.add_subcommand("dump-polynomial", "CSV of R_s and internal polynomials");
    int dp_s = 9, dp_m = 500;
    bool dp_rkc = false;
    dumppoly->add_option("--stages", dp_s, "stage count")->check(CLI::Range(3, 2000));
    dumppoly->add_option("--points", dp_m, "sample count")->check(CLI::Range(2, 10000000));
    dumppoly->add_flag("--compare-rkc", dp_rkc, "append damped RKC2 column");

    // dump-region
    auto* dumpreg = app.add_subcommand("dump-region", "CSV grid of |R_s(z)|");
    int dr_s = 9, dr_nx = 100, dr_ny = 50;
    std::pair<double, double> re_range{-10.0, 1.0}, im_range{0.0, 5.0};
    dumpreg->add_option("--stages", dr_s, "stage count")->check(CLI::Range(3, 2000));
    auto range_opt = [&](CLI::App* cmd, const char* flag, std::pair<double, double>& dst,
                         const char* desc) {
        cmd->add_option_function<std::string>(
            flag,
            [&dst, flag](const std::string& v) {
                const auto pos = v.find(':');
                if (pos == std::string::npos)
                    throw CLI::ValidationError(std::string(flag) + " expects LO:HI");
                dst.first = std::stod(v.substr(0, pos));
                dst.second = std::stod(v.substr(pos + 1));
            },
            desc);
    };
    range_opt(dumpreg, "--re", re_range, "real-axis range LO:HI");
    range_opt(dumpreg, "--im", im_range, "imaginary-axis range LO:HI");
    dumpreg->add_option("--nx", dr_nx)->check(CLI::Range(2, 100000));
    dumpreg->add_option("--ny", dr_ny)->check(CLI::Range(2, 100000));

    // fit-check
    app.add_subcommand("fit-check", "compare the stage-count fit to exact minimal s");

    // gen-refs
    auto* genrefs = app.add_subcommand("gen-refs", "regenerate stored reference solutions");
    std::string gr_problem = "all";
    std::string gr_out = mono::reference_dir();
    genrefs->add_option("--problem", gr_problem, "problem name or 'all'");
    genrefs->add_option("--out", gr_out, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitBadArgs;
    }

    try {
        if (solve->parsed())
            return cmd_solve(problems, tols,
                             atol_opt > 0 ? std::optional<double>(atol_opt) : std::nullopt,
                             rho_analytic, seed_h, format);
        if (table1->parsed()) return cmd_table1(stages);
        if (dumppoly->parsed()) return cmd_dump_polynomial(dp_s, dp_m, dp_rkc);
        if (dumpreg->parsed())
            return cmd_dump_region(dr_s, re_range.first, re_range.second, im_range.first,
                                   im_range.second, dr_nx, dr_ny);
        if (app.get_subcommand("fit-check")->parsed()) return cmd_fit_check();
        if (genrefs->parsed()) return cmd_gen_refs(gr_problem, gr_out);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitBadArgs;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitSolverAbort;
    }
    return 0;
}
