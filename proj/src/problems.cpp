#include "mono/problems.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mono/kernels.hpp"

namespace mono {

namespace {

constexpr double kPi = std::numbers::pi;

// ---------------------------------------------------------------------------
// CUSP: Zeeman's cusp catastrophe coupled to a van der Pol oscillator with
// diffusion, as given in Hairer & Wanner, "Solving ODE II", pp. 147-148:
// N = 32 cells, periodic, eps = 1e-4, sigma = 1/144, D = sigma/dx^2 = N^2/144,
//   y' = -(y^3 + a y + b)/eps + D lap(y)
//   a' = b + 0.07 v      + D lap(a)
//   b' = (1-a^2) b - a - 0.4 y + 0.035 v + D lap(b)
// v = u/(u + 0.1), u = (y - 0.7)(y - 1.3); y(0) = 0, a(0) = -2 cos(2 pi i/N),
// b(0) = 2 sin(2 pi i/N); t in [0, 1.1].
// ---------------------------------------------------------------------------
OdeProblem make_cusp() {
    constexpr int N = 32;
    constexpr double eps = 1e-4;
    constexpr double D = double(N) * N / 144.0;

    OdeProblem p;
    p.name = "cusp";
    p.n = 3 * N;
    p.x0 = 0.0;
    p.x_end = 1.1;
    p.y0.resize(3 * N);
    for (int i = 0; i < N; ++i) {
        p.y0[i] = 0.0;
        p.y0[N + i] = -2.0 * std::cos(2.0 * kPi * i / N);
        p.y0[2 * N + i] = 2.0 * std::sin(2.0 * kPi * i / N);
    }
    p.rhs = [](double, std::span<const double> state, std::span<double> d) {
        const double* y = state.data();
        const double* a = state.data() + N;
        const double* b = state.data() + 2 * N;
        for (int i = 0; i < N; ++i) {
            const int ip = (i + 1) % N, im = (i + N - 1) % N;
            const double u = (y[i] - 0.7) * (y[i] - 1.3);
            const double v = u / (u + 0.1);
            d[i] = -(y[i] * y[i] * y[i] + a[i] * y[i] + b[i]) / eps +
                   D * (y[ip] - 2.0 * y[i] + y[im]);
            d[N + i] = b[i] + 0.07 * v + D * (a[ip] - 2.0 * a[i] + a[im]);
            d[2 * N + i] = (1.0 - a[i] * a[i]) * b[i] - a[i] - 0.4 * y[i] + 0.035 * v +
                           D * (b[ip] - 2.0 * b[i] + b[im]);
        }
    };
    p.rho_bound = [](double, std::span<const double> state) {
        const double* y = state.data();
        const double* a = state.data() + N;
        double m = 0.0;
        for (int i = 0; i < N; ++i)
            m = std::max(m, std::fabs(3.0 * y[i] * y[i] + a[i]));
        // cusp relaxation dominates; 4D covers diffusion, the constant the
        // van der Pol / v-coupling rows
        return m / eps + 4.0 * D + 300.0;
    };
    return p;
}

// ---------------------------------------------------------------------------
// FINAG: FitzHugh-Nagumo nerve conduction, method of lines.
//   v_t = v_xx + v (1 - v)(v - alpha) - w,   w_t = eps (v - gamma w)
// alpha = 0.139, eps = 0.008, gamma = 2.54, x in [0, 100], Neumann ends,
// N = 400 grid points, t in [0, 100].  Initial pulse at the left end:
// v = 1/(1 + exp(2(x - 5))), w = 0.
// ---------------------------------------------------------------------------
OdeProblem make_finag() {
    constexpr int N = 400;
    constexpr double L = 100.0;
    constexpr double dx = L / (N - 1);
    constexpr double alpha = 0.139, eps = 0.008, gamma = 2.54;

    OdeProblem p;
    p.name = "finag";
    p.n = 2 * N;
    p.x0 = 0.0;
    p.x_end = 100.0;
    p.y0.assign(2 * N, 0.0);
    for (int i = 0; i < N; ++i) {
        const double x = i * dx;
        p.y0[i] = 1.0 / (1.0 + std::exp(2.0 * (x - 5.0)));
    }
    p.rhs = [](double, std::span<const double> state, std::span<double> d) {
        const double* v = state.data();
        const double* w = state.data() + N;
        const double idx2 = 1.0 / (dx * dx);
        for (int i = 0; i < N; ++i) {
            const double vm = v[i > 0 ? i - 1 : 1];          // Neumann mirror
            const double vp = v[i < N - 1 ? i + 1 : N - 2];
            const double cubic = v[i] * (1.0 - v[i]) * (v[i] - alpha);
            d[i] = idx2 * (vp - 2.0 * v[i] + vm) + cubic - w[i];
            d[N + i] = eps * (v[i] - gamma * w[i]);
        }
    };
    p.rho_bound = [](double, std::span<const double> state) {
        const double* v = state.data();
        double m = 0.0;
        for (int i = 0; i < N; ++i) {
            const double fp = -3.0 * v[i] * v[i] + 2.0 * (1.0 + alpha) * v[i] - alpha;
            m = std::max(m, std::fabs(fp));
        }
        return 4.0 / (dx * dx) + m + 1.0 + eps * (1.0 + gamma);
    };
    return p;
}

// ---------------------------------------------------------------------------
// BURGERS: Bateman-Burgers equation (ROCK4 test set),
//   u_t = nu u_xx - (u^2/2)_x,  nu = 3e-4, x in (0,1), u = 0 at both ends,
// u(x,0) = 1.5 x (1-x)^2, t in [0, 2.5], N = 500 interior points,
// conservative central differencing.
// ---------------------------------------------------------------------------
OdeProblem make_burgers() {
    constexpr int N = 500;
    constexpr double nu = 3e-4;
    constexpr double dx = 1.0 / (N + 1);

    OdeProblem p;
    p.name = "burgers";
    p.n = N;
    p.x0 = 0.0;
    p.x_end = 2.5;
    p.y0.resize(N);
    for (int i = 0; i < N; ++i) {
        const double x = (i + 1) * dx;
        p.y0[i] = 1.5 * x * (1.0 - x) * (1.0 - x);
    }
    p.rhs = [](double, std::span<const double> u, std::span<double> d) {
        const double idx2 = nu / (dx * dx);
        const double iadv = 1.0 / (4.0 * dx);
        for (int i = 0; i < N; ++i) {
            const double um = i > 0 ? u[i - 1] : 0.0;
            const double up = i < N - 1 ? u[i + 1] : 0.0;
            d[i] = idx2 * (up - 2.0 * u[i] + um) - iadv * (up * up - um * um);
        }
    };
    p.rho_bound = [](double, std::span<const double> u) {
        double m = 0.0;
        for (int i = 0; i < N; ++i) m = std::max(m, std::fabs(u[i]));
        return 4.0 * nu / (dx * dx) + m / dx;
    };
    return p;
}

// ---------------------------------------------------------------------------
// COMB: the 2-D nonlinear "hot spot" model from combustion theory
// (Hundsdorfer & Verwer, p. 439):
//   u_t = lap(u) + (R/(alpha delta)) (1 + alpha - u) exp(delta - delta/u)
// alpha = 1, delta = 20, R = 5, unit square as the symmetry quarter of the
// full domain: du/dn = 0 at x = 0 and y = 0, u = 1 at x = 1 and y = 1,
// u = 1 initially, t in [0, 0.3].  The hot spot ignites near the insulated
// corner shortly before the end of the interval.  M = 80 cells per side,
// unknowns at the M x M nodes away from the Dirichlet sides.
// ---------------------------------------------------------------------------
constexpr int kCombM = 80;
constexpr int kCombN = kCombM * kCombM;

double comb_reaction(double u) {
    constexpr double alpha = 1.0, delta = 20.0, R = 5.0;
    return R / (alpha * delta) * (1.0 + alpha - u) * std::exp(delta - delta / u);
}

double comb_reaction_deriv(double u) {
    constexpr double alpha = 1.0, delta = 20.0, R = 5.0;
    return R / (alpha * delta) * std::exp(delta - delta / u) *
           (-1.0 + (1.0 + alpha - u) * delta / (u * u));
}

OdeProblem make_comb() {
    constexpr int M = kCombM;  // nodes per side at x = 0 .. (M-1)/M; x = 1 is Dirichlet
    constexpr double dx = 1.0 / M;

    OdeProblem p;
    p.name = "comb";
    p.n = kCombN;
    p.x0 = 0.0;
    p.x_end = 0.3;
    p.y0.assign(kCombN, 1.0);
    p.rhs = [](double, std::span<const double> u, std::span<double> d) {
        const double idx2 = 1.0 / (dx * dx);
#pragma omp parallel for if (kCombN >= kernels::kParallelGrain)
        for (int row = 0; row < M; ++row) {
            for (int col = 0; col < M; ++col) {
                const int k = row * M + col;
                const double uc = u[k];
                // symmetry mirror at the insulated sides, u = 1 beyond the others
                const double ul = col > 0 ? u[k - 1] : u[k + 1];
                const double ur = col < M - 1 ? u[k + 1] : 1.0;
                const double ud = row > 0 ? u[k - M] : u[k + M];
                const double uu = row < M - 1 ? u[k + M] : 1.0;
                d[k] = idx2 * (ul + ur + ud + uu - 4.0 * uc) + comb_reaction(uc);
            }
        }
    };
    p.rho_bound = [](double, std::span<const double> u) {
        double m = 0.0;
        for (int k = 0; k < kCombN; ++k)
            m = std::max(m, std::fabs(comb_reaction_deriv(u[k])));
        return 8.0 / (dx * dx) + m;
    };
    return p;
}

}  // namespace

OdeProblem make_linear_problem(double lambda, double x0, double x_end, double y0) {
    OdeProblem p;
    p.name = "linear";
    p.n = 1;
    p.x0 = x0;
    p.x_end = x_end;
    p.y0 = {y0};
    p.rhs = [lambda](double, std::span<const double> y, std::span<double> d) {
        d[0] = lambda * y[0];
    };
    p.rho_bound = [lambda](double, std::span<const double>) { return std::fabs(lambda); };
    p.analytic_reference = [lambda, x0, x_end, y0]() {
        return std::vector<double>{y0 * std::exp(lambda * (x_end - x0))};
    };
    return p;
}

OdeProblem make_decay_grid_problem(int N, double t_end) {
    if (N < 2) throw std::invalid_argument("decay_grid: need N >= 2");
    const double dx = 1.0 / (N + 1);

    OdeProblem p;
    p.name = "decay_grid";
    p.n = N;
    p.x0 = 0.0;
    p.x_end = t_end;
    p.y0.resize(N);
    for (int i = 0; i < N; ++i) p.y0[i] = std::sin(kPi * (i + 1) * dx);
    p.rhs = [N, dx](double, std::span<const double> u, std::span<double> d) {
        const double idx2 = 1.0 / (dx * dx);
        for (int i = 0; i < N; ++i) {
            const double um = i > 0 ? u[i - 1] : 0.0;
            const double up = i < N - 1 ? u[i + 1] : 0.0;
            d[i] = idx2 * (up - 2.0 * u[i] + um);
        }
    };
    p.rho_bound = [dx](double, std::span<const double>) { return 4.0 / (dx * dx); };
    // the initial profile is the slowest discrete Laplacian eigenvector, so
    // the semi-discrete solution is exactly exponential decay
    p.analytic_reference = [N, dx, t_end]() {
        const double s = std::sin(0.5 * kPi * dx);
        const double lambda1 = -4.0 * s * s / (dx * dx);
        std::vector<double> ref(N);
        for (int i = 0; i < N; ++i)
            ref[i] = std::exp(lambda1 * t_end) * std::sin(kPi * (i + 1) * dx);
        return ref;
    };
    return p;
}

OdeProblem make_problem(const std::string& name) {
    if (name == "cusp") return make_cusp();
    if (name == "finag") return make_finag();
    if (name == "burgers") return make_burgers();
    if (name == "comb") return make_comb();
    if (name == "linear") return make_linear_problem(-1.0, 0.0, 1.0, 1.0);
    if (name == "decay_grid") return make_decay_grid_problem(100, 0.1);
    throw std::invalid_argument("make_problem: unknown problem '" + name + "'");
}

double euclidean_error(std::span<const double> y, std::span<const double> ref) {
    if (y.size() != ref.size())
        throw std::invalid_argument("euclidean_error: length mismatch");
    double sum = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
        const double d = y[i] - ref[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

std::string reference_dir() {
    if (const char* env = std::getenv("MONO_REF_DIR")) return env;
    return "data/refs";
}

std::string reference_path(const std::string& problem) {
    return reference_dir() + "/" + problem + ".ref";
}

std::vector<double> reference_solution(const OdeProblem& p) {
    if (p.analytic_reference) return p.analytic_reference();
    const std::string path = reference_path(p.name);
    std::ifstream probe(path, std::ios::binary);
    if (!probe)
        throw std::runtime_error("reference_solution: no reference for '" + p.name +
                                 "' (expected " + path + ")");
    probe.close();
    ReferenceFile ref = read_reference(path);
    if (ref.n != p.n)
        throw std::runtime_error("reference_solution: dimension mismatch for '" + p.name + "'");
    return ref.data;
}

void write_reference(const std::string& path, const ReferenceFile& ref) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("write_reference: cannot open " + path);
    out << "monoref " << ref.problem << " n=" << ref.n << " atol=" << ref.atol
        << " rtol=" << ref.rtol << " generator=" << ref.generator << "\n";
    out.write(reinterpret_cast<const char*>(ref.data.data()),
              std::streamsize(ref.data.size() * sizeof(double)));
    if (!out) throw std::runtime_error("write_reference: write failed for " + path);
}

ReferenceFile read_reference(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("read_reference: cannot open " + path);
    std::string header;
    std::getline(in, header);
    std::istringstream hs(header);
    std::string magic, token;
    ReferenceFile ref;
    hs >> magic >> ref.problem;
    if (magic != "monoref") throw std::runtime_error("read_reference: bad header in " + path);
    while (hs >> token) {
        if (token.rfind("n=", 0) == 0) ref.n = std::stoi(token.substr(2));
        else if (token.rfind("atol=", 0) == 0) ref.atol = std::stod(token.substr(5));
        else if (token.rfind("rtol=", 0) == 0) ref.rtol = std::stod(token.substr(5));
        else if (token.rfind("generator=", 0) == 0) ref.generator = token.substr(10);
    }
    if (ref.n <= 0) throw std::runtime_error("read_reference: missing dimension in " + path);
    ref.data.resize(ref.n);
    in.read(reinterpret_cast<char*>(ref.data.data()), std::streamsize(ref.n * sizeof(double)));
    if (!in) throw std::runtime_error("read_reference: truncated payload in " + path);
    return ref;
}

}  // namespace mono
