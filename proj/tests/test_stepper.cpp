#include <doctest.h>

#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "mono/stepper.hpp"
#include "mono/tableau.hpp"

using namespace mono;

namespace {

StepResult step1(const RhsFn& f, const MethodTableau& tab, double x0, std::vector<double>& y,
                 double h, std::vector<double>& yemb) {
    std::vector<double> f0(y.size()), y1(y.size());
    yemb.resize(y.size());
    f(x0, y, f0);
    StepWorkspace ws;
    auto r = mono_step(f, tab, x0, y, f0, h, y1, yemb, ws);
    y = y1;
    return r;
}

}  // namespace

TEST_CASE("zero derivative leaves the state untouched") {
    RhsFn f = [](double, std::span<const double>, std::span<double> d) { d[0] = 0.0; };
    for (int s : {3, 7, 31}) {
        std::vector<double> y{1.7}, ye;
        step1(f, cached_tableau(s), 0.0, y, 0.4, ye);
        CHECK(y[0] == doctest::Approx(1.7).epsilon(1e-14));
        CHECK(ye[0] == doctest::Approx(1.7).epsilon(1e-14));
    }
}

TEST_CASE("constant derivative integrates exactly") {
    RhsFn f = [](double, std::span<const double>, std::span<double> d) { d[0] = -2.5; };
    for (int s : {3, 8, 45}) {
        std::vector<double> y{3.0}, ye;
        step1(f, cached_tableau(s), 0.0, y, 0.8, ye);
        CHECK(y[0] == doctest::Approx(3.0 - 2.5 * 0.8).epsilon(1e-13));
    }
}

TEST_CASE("scalar decay reproduces the stability polynomial") {
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> sd(3, 150);
    std::uniform_real_distribution<double> ud(0.0, 1.0);
    for (int trial = 0; trial < 40; ++trial) {
        const int s = sd(rng);
        const auto& tab = cached_tableau(s);
        const double z = -ud(rng) * tab.rho;
        RhsFn f = [z](double, std::span<const double> y, std::span<double> d) { d[0] = z * y[0]; };
        std::vector<double> y{1.0}, ye;
        step1(f, tab, 0.0, y, 1.0, ye);
        const auto smp = eval_stability(tab, z);
        CHECK(std::fabs(y[0] - smp.R.real()) <= 1e-12);
        CHECK(std::fabs(ye[0] - smp.Rprime.real()) <= 1e-12);
    }
}

TEST_CASE("diagonalizable linear system matches the mode-wise solution") {
    // A = V diag(l) V^{-1} with V = [[1,1,0],[1,-1,1],[0,1,1]]
    const double l[3] = {-40.0, -4.0, -0.25};
    const double V[3][3] = {{1, 1, 0}, {1, -1, 1}, {0, 1, 1}};
    const double th = 1.0 / 3.0;
    const double inv[3][3] = {{2 * th, th, -th}, {th, -th, th}, {-th, th, 2 * th}};
    double A[3][3];
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            A[i][j] = 0.0;
            for (int k = 0; k < 3; ++k) A[i][j] += V[i][k] * l[k] * inv[k][j];
        }
    RhsFn f = [&A](double, std::span<const double> y, std::span<double> d) {
        for (int i = 0; i < 3; ++i) d[i] = A[i][0] * y[0] + A[i][1] * y[1] + A[i][2] * y[2];
    };
    // sanity: A V_k = l_k V_k, otherwise inv is not actually V^{-1}
    for (int k = 0; k < 3; ++k) {
        std::vector<double> vk{V[0][k], V[1][k], V[2][k]}, av(3);
        f(0.0, vk, av);
        for (int i = 0; i < 3; ++i) REQUIRE(av[i] == doctest::Approx(l[k] * vk[i]).epsilon(1e-11));
    }

    const int s = 12;
    const auto& tab = cached_tableau(s);
    const double h = 0.9 * tab.rho / 40.0;
    std::vector<double> y{1.0, -2.0, 0.5}, ye;
    step1(f, tab, 0.0, y, h, ye);

    // oracle: y1 = V R(h diag(l)) V^{-1} y0
    double coef[3];
    const double y0[3] = {1.0, -2.0, 0.5};
    for (int k = 0; k < 3; ++k) {
        coef[k] = 0.0;
        for (int j = 0; j < 3; ++j) coef[k] += inv[k][j] * y0[j];
        coef[k] *= eval_stability(tab, h * l[k]).R.real();
    }
    for (int i = 0; i < 3; ++i) {
        double want = 0.0;
        for (int k = 0; k < 3; ++k) want += V[i][k] * coef[k];
        CHECK(y[i] == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("second-order convergence on a smooth nonlinear problem") {
    RhsFn f = [](double x, std::span<const double> y, std::span<double> d) {
        d[0] = y[0] * std::cos(x);
    };
    const auto& tab = cached_tableau(5);
    const double exact = std::exp(std::sin(1.0));
    double prev_err = 0.0;
    int halvings = 0;
    for (int n : {20, 40, 80, 160}) {
        std::vector<double> y{1.0}, f0(1), y1(1), ye(1);
        StepWorkspace ws;
        const double h = 1.0 / n;
        double x = 0.0;
        for (int i = 0; i < n; ++i) {
            f(x, y, f0);
            mono_step(f, tab, x, y, f0, h, y1, ye, ws);
            y = y1;
            x += h;
        }
        const double err = std::fabs(y[0] - exact);
        if (prev_err > 0.0) {
            CHECK(std::log2(prev_err / err) >= 1.9);
            ++halvings;
        }
        prev_err = err;
    }
    CHECK(halvings == 3);
}

TEST_CASE("error estimate pinned values") {
    std::vector<double> est(1);
    // identical states, zero derivative
    estimate_error(std::vector<double>{2.0}, std::vector<double>{2.0}, std::vector<double>{0.0},
                   0.3, est);
    CHECK(est[0] == 0.0);
    // quadrature step of y' = x from 0: y1 = h^2/2, f1 = h
    const double h = 0.25;
    estimate_error(std::vector<double>{0.0}, std::vector<double>{h * h / 2.0},
                   std::vector<double>{h}, h, est);
    CHECK(est[0] == doctest::Approx(h * h / 20.0).epsilon(1e-14));
}

TEST_CASE("error estimate is asymptotically h^2 y'' / 20") {
    const double lam = -0.7, y0v = 1.3;
    RhsFn f = [lam](double, std::span<const double> y, std::span<double> d) {
        d[0] = lam * y[0];
    };
    const auto& tab = cached_tableau(4);
    double prev_ratio = 0.0;
    for (double h : {1e-2, 5e-3, 2.5e-3}) {
        std::vector<double> y{y0v}, f0(1), y1(1), ye(1), est(1);
        StepWorkspace ws;
        f(0.0, y, f0);
        mono_step(f, tab, 0.0, y, f0, h, y1, ye, ws);
        std::vector<double> f1(1);
        f(h, y1, f1);
        estimate_error(y, y1, f1, h, est);
        const double ratio = est[0] / (h * h * lam * lam * y0v / 20.0);
        CHECK(std::fabs(ratio - 1.0) < 0.05);
        if (prev_ratio != 0.0)  // deviation from 1 shrinks with h
            CHECK(std::fabs(ratio - 1.0) < std::fabs(prev_ratio - 1.0));
        prev_ratio = ratio;
    }
}

TEST_CASE("scaled error norm pinned values") {
    const std::vector<double> atol{1e-3}, rtol{1e-6};
    CHECK(error_norm(std::vector<double>{0.0, 0.0}, std::vector<double>{1.0, 2.0},
                     std::vector<double>{1.0, 2.0}, atol, rtol) == 0.0);
    // one component exactly at the absolute tolerance
    CHECK(error_norm(std::vector<double>{1e-3}, std::vector<double>{0.0},
                     std::vector<double>{0.0}, atol, rtol) == doctest::Approx(1.0));
    // RMS over two components: sqrt((1 + 4)/2)
    CHECK(error_norm(std::vector<double>{1e-3, 2e-3}, std::vector<double>{0.0, 0.0},
                     std::vector<double>{0.0, 0.0}, atol, rtol) ==
          doctest::Approx(std::sqrt(2.5)).epsilon(1e-14));
    // the relative part uses the larger state magnitude
    const double w = 1e-3 + 1e-6 * 5.0;
    CHECK(error_norm(std::vector<double>{w}, std::vector<double>{4.0}, std::vector<double>{5.0},
                     atol, rtol) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("per-step derivative call count is s - 1") {
    for (int s : {3, 10, 64}) {
        int calls = 0;
        RhsFn f = [&calls](double, std::span<const double> y, std::span<double> d) {
            ++calls;
            d[0] = -y[0];
        };
        std::vector<double> y{1.0}, f0{-1.0}, y1(1), ye(1);
        StepWorkspace ws;
        auto r = mono_step(f, cached_tableau(s), 0.0, y, f0, 1e-3, y1, ye, ws);
        CHECK(r.ok);
        CHECK(r.f_evals == s - 1);
        CHECK(calls == s - 1);
    }
}

TEST_CASE("non-finite stage values are reported, not propagated silently") {
    RhsFn f = [](double, std::span<const double> y, std::span<double> d) {
        d[0] = y[0] > 0.5 ? std::numeric_limits<double>::infinity() : -y[0];
    };
    std::vector<double> y{1.0}, f0{std::numeric_limits<double>::infinity()}, y1(1), ye(1);
    StepWorkspace ws;
    auto r = mono_step(f, cached_tableau(6), 0.0, y, f0, 0.1, y1, ye, ws);
    CHECK_FALSE(r.ok);
    CHECK(r.bad_stage >= 1);
}

TEST_CASE("workspace stays at four auxiliary vectors") {
    StepWorkspace ws;
    ws.resize(17);
    CHECK(ws.v0.size() == 17);
    CHECK(ws.v1.size() == 17);
    CHECK(ws.v2.size() == 17);
    CHECK(ws.fj.size() == 17);
}
