#include "detproc/gue.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "detproc/eig.hpp"
#include "detproc/orthopoly.hpp"

namespace detproc {
namespace gue {

namespace {
constexpr double kPi = 3.14159265358979323846;

// H_m(xi) / sqrt(2^m m!), kept O(e^{xi^2/2}) instead of factorially large.
double hermite_seminorm(int m, double xi) {
    double prev = 1.0;
    if (m == 0) return prev;
    double cur = xi * std::sqrt(2.0);
    for (int j = 1; j < m; ++j) {
        const double next =
            xi * std::sqrt(2.0 / (j + 1)) * cur - std::sqrt(double(j) / (j + 1)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}
} // namespace

double HermitianMatrix::trace_real() const {
    double t = 0.0;
    for (int i = 0; i < n; ++i) t += at(i, i).real();
    return t;
}

bool HermitianMatrix::is_hermitian() const {
    for (int i = 0; i < n; ++i) {
        if (at(i, i).imag() != 0.0) return false;
        for (int j = i + 1; j < n; ++j)
            if (at(i, j) != std::conj(at(j, i))) return false;
    }
    return true;
}

HermitianMatrix sample_gue(int n, Rng& rng) {
    if (n < 1) throw std::invalid_argument("sample_gue: n >= 1");
    HermitianMatrix h(n);
    const double diag_sd = std::sqrt(double(n));
    const double off_sd = std::sqrt(0.5 * n);
    for (int i = 0; i < n; ++i) {
        h.at(i, i) = std::complex<double>(diag_sd * rng.normal(), 0.0);
        for (int j = i + 1; j < n; ++j) {
            const std::complex<double> z(off_sd * rng.normal(), off_sd * rng.normal());
            h.at(i, j) = z;
            h.at(j, i) = std::conj(z);
        }
    }
    return h;
}

Spectrum eigenvalues(const HermitianMatrix& h) {
    if (h.n > 500) throw std::invalid_argument("eigenvalues: n <= 500");
    Spectrum s;
    s.values = hermitian_eigenvalues(h.a, h.n);
    return s;
}

bool interlaces(const std::vector<double>& upper, const std::vector<double>& lower,
                double tol) {
    // lower = level m, upper = level m+1: upper[k] <= lower[k] <= upper[k+1].
    if (upper.size() != lower.size() + 1) return false;
    for (std::size_t k = 0; k < lower.size(); ++k) {
        if (upper[k] > lower[k] + tol) return false;
        if (lower[k] > upper[k + 1] + tol) return false;
    }
    return true;
}

MinorArray minor_eigenvalues(const HermitianMatrix& h) {
    MinorArray ma;
    ma.n = h.n;
    ma.levels.resize(h.n);
    for (int m = 1; m <= h.n; ++m) {
        std::vector<std::complex<double>> sub(std::size_t(m) * m);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j) sub[std::size_t(i) * m + j] = h.at(i, j);
        ma.levels[m - 1] = hermitian_eigenvalues(std::move(sub), m);
    }
    for (int m = 1; m < h.n; ++m)
        if (!interlaces(ma.levels[m], ma.levels[m - 1]))
            throw std::runtime_error("minor_eigenvalues: interlacing violated");
    return ma;
}

std::vector<double> rescale_spectrum(const std::vector<double>& values, double n,
                                     double a_target) {
    // Our samples follow a = 1/2N; the target scale multiplies by
    // sqrt(a_source / a_target) = 1 / sqrt(2 n a_target).
    const double f = 1.0 / std::sqrt(2.0 * n * a_target);
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = values[i] * f;
    return out;
}

double gue_kernel(int n, double x, double y) {
    if (n < 1) throw std::invalid_argument("gue_kernel: n >= 1");
    const PolyFamily fam(PolyKind::HermiteScaledGUE, double(n), n + 1);
    return christoffel_darboux_weighted(fam, n, x, y);
}

double semicircle_density(double mu) {
    const double u = 1.0 - 0.25 * mu * mu;
    return u > 0.0 ? std::sqrt(u) / kPi : 0.0;
}

FiniteRankKernel finite_rank_kernel(int n) {
    FiniteRankKernel k;
    k.rank = n;
    k.space = Space::Continuum;
    k.leveled = false;
    k.tail_scale = 2.0 * n + 14.0 * std::sqrt(double(n));
    for (int j = 0; j < n; ++j) {
        auto f = [n, j](int, double x) {
            const PolyFamily fam(PolyKind::HermiteScaledGUE, double(n), n + 1);
            return eval_weighted(fam, j, x);
        };
        k.psi.push_back(f);
        k.phi.push_back(f);
    }
    return k;
}

double largest_eigenvalue_cdf(int n, double s) {
    if (n < 1 || n > 30)
        throw std::invalid_argument("largest_eigenvalue_cdf: 1 <= n <= 30");
    GapProblem g;
    g.kernel = finite_rank_kernel(n);
    const double inf = std::numeric_limits<double>::infinity();
    g.region = Region::of({{s, inf}});
    return gap_probability(g).value;
}

// --- minors process -------------------------------------------------------

double minors_psi(int matrix_size, int m, double x) {
    if (m < 0) return 0.0;
    const double nn = double(matrix_size);
    const double xi = x / std::sqrt(2.0 * nn);
    // (-1)^m (2N)^{-m/2} e^{-x^2/2N} H_m(xi)
    //   = (-1)^m e^{-x^2/2N} hermite_seminorm(m, xi) sqrt(m!) N^{-m/2}
    const double logmag = 0.5 * std::lgamma(m + 1.0) - 0.5 * m * std::log(nn);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(-x * x / (2.0 * nn) + logmag) * hermite_seminorm(m, xi);
}

double minors_phi(int matrix_size, int m, double x) {
    if (m < 0) return 0.0;
    const double nn = double(matrix_size);
    const double xi = x / std::sqrt(2.0 * nn);
    // (-1)^m (N/2)^{m/2} / (sqrt(2 pi N) m!) H_m(xi); the sqrt(N) in the
    // root makes integral Phi_i Psi_j = delta_ij exact.
    const double logmag = 0.5 * m * std::log(nn) - 0.5 * std::lgamma(m + 1.0) -
                          0.5 * std::log(2.0 * kPi * nn);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * std::exp(logmag) * hermite_seminorm(m, xi);
}

double minors_shift(int n1, int n2, double x1, double x2) {
    const int d = n2 - n1;
    if (d < 1) return 0.0;
    const double dx = x2 - x1;
    if (dx < 0.0) return 0.0;
    if (d == 1) return 1.0;
    if (dx == 0.0) return 0.0;
    return std::exp((d - 1) * std::log(dx) - std::lgamma(double(d)));
}

double minors_kernel(int matrix_size, int n1, double x1, int n2, double x2) {
    if (n1 < 1 || n2 < 1 || n1 > matrix_size || n2 > matrix_size)
        throw std::invalid_argument("minors_kernel: levels in [1, N]");
    double s = 0.0;
    for (int k = 1; k <= n2; ++k)
        s += minors_psi(matrix_size, n1 - k, x1) * minors_phi(matrix_size, n2 - k, x2);
    if (n1 < n2) s -= minors_shift(n1, n2, x1, x2);
    return s;
}

FiniteRankKernel minors_finite_rank_kernel(int matrix_size) {
    FiniteRankKernel k;
    k.rank = matrix_size;
    k.space = Space::Continuum;
    k.leveled = true;
    k.tail_scale = 2.0 * matrix_size + 14.0 * std::sqrt(double(matrix_size));
    for (int kk = 1; kk <= matrix_size; ++kk) {
        k.psi.push_back([matrix_size, kk](int level, double x) {
            return (kk <= level) ? minors_psi(matrix_size, level - kk, x) : 0.0;
        });
        k.phi.push_back([matrix_size, kk](int level, double x) {
            return (kk <= level) ? minors_phi(matrix_size, level - kk, x) : 0.0;
        });
    }
    k.shift = [](int n1, int n2, double x1, double x2) {
        return minors_shift(n1, n2, x1, x2);
    };
    return k;
}

} // namespace gue
} // namespace detproc
