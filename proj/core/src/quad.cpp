#include "detproc/quad.hpp"

#include <cmath>
#include <stdexcept>

#include "detproc/eig.hpp"

namespace detproc {

namespace {

// Orthonormal weighted Hermite function h_k(x) = e^{-x^2/2} H_k(x) / sqrt(sqrt(pi) 2^k k!).
double weighted_hermite_orthonormal(int k, double x) {
    double h0 = std::exp(-0.5 * x * x) / std::pow(M_PI, 0.25);
    if (k == 0) return h0;
    double h1 = x * std::sqrt(2.0) * h0;
    for (int j = 1; j < k; ++j) {
        const double h2 =
            x * std::sqrt(2.0 / (j + 1)) * h1 - std::sqrt(double(j) / (j + 1)) * h0;
        h0 = h1;
        h1 = h2;
    }
    return h1;
}

} // namespace

QuadRule gauss_hermite_total(int m) {
    if (m < 1) throw std::invalid_argument("gauss_hermite_total: m >= 1");
    std::vector<double> d(m, 0.0), e(m > 1 ? m - 1 : 0);
    for (int k = 1; k < m; ++k) e[k - 1] = std::sqrt(0.5 * k);
    tridiagonal_ql(d, e);

    QuadRule rule;
    rule.x = d;
    rule.w.resize(m);
    for (int i = 0; i < m; ++i) {
        const double h = weighted_hermite_orthonormal(m - 1, rule.x[i]);
        rule.w[i] = 1.0 / (m * h * h);
    }
    return rule;
}

QuadRule gauss_legendre(int m) {
    if (m < 1) throw std::invalid_argument("gauss_legendre: m >= 1");
    QuadRule rule;
    rule.x.resize(m);
    rule.w.resize(m);
    const int half = (m + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double z = std::cos(M_PI * (i + 0.75) / (m + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < m; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1);
            }
            pp = m * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::fabs(dz) < 1e-15) break;
        }
        rule.x[i] = -z;
        rule.x[m - 1 - i] = z;
        rule.w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        rule.w[m - 1 - i] = rule.w[i];
    }
    return rule;
}

QuadRule gauss_legendre_on(int m, double a, double b) {
    QuadRule base = gauss_legendre(m);
    QuadRule out;
    out.x.resize(m);
    out.w.resize(m);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (int i = 0; i < m; ++i) {
        out.x[i] = mid + half * base.x[i];
        out.w[i] = half * base.w[i];
    }
    return out;
}

double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int panels, int nodes_per_panel) {
    const QuadRule base = gauss_legendre(nodes_per_panel);
    const double step = (b - a) / panels;
    double total = 0.0;
    for (int p = 0; p < panels; ++p) {
        const double lo = a + p * step;
        const double mid = lo + 0.5 * step, half = 0.5 * step;
        for (int i = 0; i < nodes_per_panel; ++i)
            total += half * base.w[i] * f(mid + half * base.x[i]);
    }
    return total;
}

} // namespace detproc
