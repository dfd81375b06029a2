#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <random>
#include <stdexcept>
#include <vector>

#include "mono/driver.hpp"
#include "mono/problems.hpp"

using namespace mono;

TEST_CASE("factory knows its catalogue") {
    struct Expect {
        const char* name;
        int n;
    };
    for (auto [name, n] : {Expect{"cusp", 96}, Expect{"finag", 800}, Expect{"burgers", 500},
                           Expect{"comb", 6400}, Expect{"linear", 1}}) {
        auto p = make_problem(name);
        CHECK(p.n == n);
        CHECK(p.y0.size() == std::size_t(n));
        CHECK(p.x_end > p.x0);
        REQUIRE(bool(p.rhs));
        std::vector<double> d(n);
        p.rhs(p.x0, p.y0, d);
        for (double v : d) REQUIRE(std::isfinite(v));
        REQUIRE(bool(p.rho_bound));
        CHECK(p.rho_bound(p.x0, p.y0) > 0.0);
    }
    CHECK_THROWS_AS((void)make_problem("no-such-problem"), std::invalid_argument);
}

TEST_CASE("error metric pinned values") {
    CHECK(euclidean_error(std::vector<double>{1.0, -2.0}, std::vector<double>{1.0, -2.0}) == 0.0);
    CHECK(euclidean_error(std::vector<double>{3.0, 0.0}, std::vector<double>{0.0, -4.0}) ==
          doctest::Approx(5.0));
}

TEST_CASE("synthetic problems carry their closed-form terminal state") {
    auto lin = make_linear_problem(-1.0, 0.0, 1.0, 1.0);
    REQUIRE(bool(lin.analytic_reference));
    auto ref = lin.analytic_reference();
    REQUIRE(ref.size() == 1);
    CHECK(ref[0] == doctest::Approx(std::exp(-1.0)).epsilon(1e-14));
    CHECK(reference_solution(lin)[0] == doctest::Approx(ref[0]));

    auto grid = make_decay_grid_problem(60, 0.001);
    auto gref = reference_solution(grid);
    REQUIRE(gref.size() == 60);
    // solve and compare against the closed form
    SolverConfig cfg;
    cfg.atol = cfg.rtol = 1e-8;
    auto rep = integrate(grid, cfg);
    REQUIRE(rep.status == SolveStatus::Success);
    CHECK(euclidean_error(rep.y_final, gref) <= 1e-5);
}

TEST_CASE("grid refinement quadruples the analytic stiffness bound") {
    for (int N : {40, 100}) {
        auto a = make_decay_grid_problem(N, 0.1);
        auto b = make_decay_grid_problem(2 * N, 0.1);
        const double ratio = b.rho_bound(0.0, b.y0) / a.rho_bound(0.0, a.y0);
        CHECK(ratio == doctest::Approx(4.0).epsilon(0.15));
    }
}

TEST_CASE("analytic stiffness bounds dominate the measured spectral radius") {
    std::mt19937 rng(2024);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (const char* name : {"cusp", "finag", "burgers", "comb"}) {
        CAPTURE(name);
        auto p = make_problem(name);
        std::vector<double> y(p.y0), fy(p.n);
        double worst = 0.0;
        for (int trial = 0; trial < 100; ++trial) {
            for (int i = 0; i < p.n; ++i)
                y[i] = p.y0[i] + 0.01 * (std::fabs(p.y0[i]) + 0.1) * u(rng);
            p.rhs(p.x0, y, fy);
            auto e = estimate_spectral_radius(p.rhs, p.x0, y, fy, nullptr, 2.22e-16);
            const double raw = e.rho / 1.2;  // strip the safety inflation
            const double bound = p.rho_bound(p.x0, y);
            REQUIRE(bound > 0.0);
            worst = std::max(worst, raw / bound);
        }
        CHECK(worst <= 1.05);
    }
}

TEST_CASE("stored terminal references load with the right shape") {
    for (const char* name : {"cusp", "finag", "burgers", "comb"}) {
        CAPTURE(name);
        auto p = make_problem(name);
        auto ref = reference_solution(p);
        CHECK(ref.size() == std::size_t(p.n));
        for (double v : ref) REQUIRE(std::isfinite(v));
    }
}

TEST_CASE("reference files round-trip") {
    ReferenceFile ref;
    ref.problem = "roundtrip";
    ref.n = 5;
    ref.atol = 1e-11;
    ref.rtol = 1e-11;
    ref.generator = "unit-test";
    ref.data = {0.0, -1.5, 3.25, 1e-300, 6.02e23};
    const std::string path = "roundtrip_test.ref";
    write_reference(path, ref);
    auto back = read_reference(path);
    std::remove(path.c_str());
    CHECK(back.problem == ref.problem);
    CHECK(back.n == ref.n);
    CHECK(back.atol == ref.atol);
    CHECK(back.generator == ref.generator);
    REQUIRE(back.data.size() == ref.data.size());
    for (std::size_t i = 0; i < ref.data.size(); ++i) CHECK(back.data[i] == ref.data[i]);
}

TEST_CASE("missing reference data is a hard error") {
    OdeProblem p;
    p.name = "definitely-not-on-disk";
    p.n = 2;
    CHECK_THROWS_AS((void)reference_solution(p), std::runtime_error);
}
