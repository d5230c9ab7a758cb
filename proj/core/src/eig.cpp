#include "detproc/eig.hpp"

#include <algorithm>
#include <cmath>

namespace detproc {

namespace {
using cd = std::complex<double>;
} // namespace

void hermitian_to_tridiagonal(std::vector<cd>& a, int n, std::vector<double>& d,
                              std::vector<double>& e) {
    d.assign(n, 0.0);
    e.assign(n > 0 ? n - 1 : 0, 0.0);
    if (n == 1) {
        d[0] = a[0].real();
        return;
    }
    auto A = [&](int i, int j) -> cd& { return a[std::size_t(i) * n + j]; };

    std::vector<cd> v(n), p(n), w(n);
    for (int k = 0; k + 2 < n; ++k) {
        const int m = n - k - 1; // length of the column below the diagonal
        double colnorm2 = 0.0;
        for (int i = k + 1; i < n; ++i) colnorm2 += std::norm(A(i, k));
        const double colnorm = std::sqrt(colnorm2);
        const cd a0 = A(k + 1, k);
        if (colnorm == 0.0) {
            e[k] = 0.0;
            continue;
        }
        const cd theta = (a0 != cd(0.0)) ? a0 / std::abs(a0) : cd(1.0);
        const cd alpha = -theta * colnorm; // target sub-diagonal entry

        // Householder direction u = x - alpha e1, normalized.
        double unorm2 = 0.0;
        v[k + 1] = a0 - alpha;
        unorm2 += std::norm(v[k + 1]);
        for (int i = k + 2; i < n; ++i) {
            v[i] = A(i, k);
            unorm2 += std::norm(v[i]);
        }
        e[k] = std::abs(alpha);
        if (unorm2 <= 1e-300) continue; // column already in the right form
        const double uscale = 1.0 / std::sqrt(unorm2);
        for (int i = k + 1; i < n; ++i) v[i] *= uscale;

        // p = A v on the trailing block, K = v* p, w = p - K v,
        // A <- A - 2 v w* - 2 w v*.
        for (int i = k + 1; i < n; ++i) {
            cd s = 0.0;
            for (int j = k + 1; j < n; ++j) s += A(i, j) * v[j];
            p[i] = s;
        }
        cd kvp = 0.0;
        for (int i = k + 1; i < n; ++i) kvp += std::conj(v[i]) * p[i];
        for (int i = k + 1; i < n; ++i) w[i] = p[i] - kvp * v[i];
        for (int i = k + 1; i < n; ++i) {
            for (int j = k + 1; j < n; ++j)
                A(i, j) -= 2.0 * (v[i] * std::conj(w[j]) + w[i] * std::conj(v[j]));
        }
        A(k + 1, k) = alpha;
        for (int i = k + 2; i < n; ++i) A(i, k) = 0.0;
        (void)m;
    }
    for (int i = 0; i < n; ++i) d[i] = A(i, i).real();
    e[n - 2] = std::abs(A(n - 1, n - 2));
}

void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e) {
    const int n = int(d.size());
    if (n <= 1) return;
    e.resize(n, 0.0); // e[n-1] used as workspace
    constexpr double kTol = 1e-14;
    constexpr int kMaxIter = 50;

    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int m;
        do {
            for (m = l; m < n - 1; ++m) {
                const double dd = std::fabs(d[m]) + std::fabs(d[m + 1]);
                if (std::fabs(e[m]) <= kTol * dd) break;
            }
            if (m != l) {
                if (iter++ == kMaxIter)
                    throw EigenError("tridiagonal_ql: no convergence in 50 iterations");
                double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
                double r = std::hypot(g, 1.0);
                g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
                double s = 1.0, c = 1.0, pshift = 0.0;
                int i;
                for (i = m - 1; i >= l; --i) {
                    double f = s * e[i];
                    const double b = c * e[i];
                    r = std::hypot(f, g);
                    e[i + 1] = r;
                    if (r == 0.0) {
                        d[i + 1] -= pshift;
                        e[m] = 0.0;
                        break;
                    }
                    s = f / r;
                    c = g / r;
                    g = d[i + 1] - pshift;
                    r = (d[i] - g) * s + 2.0 * c * b;
                    pshift = s * r;
                    d[i + 1] = g + pshift;
                    g = c * r - b;
                }
                if (r == 0.0 && i >= l) continue;
                d[l] -= pshift;
                e[l] = g;
                e[m] = 0.0;
            }
        } while (m != l);
    }
    std::sort(d.begin(), d.end());
}

std::vector<double> hermitian_eigenvalues(std::vector<cd> a, int n) {
    std::vector<double> d, e;
    hermitian_to_tridiagonal(a, n, d, e);
    tridiagonal_ql(d, e);
    return d;
}

} // namespace detproc
