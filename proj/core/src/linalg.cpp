#include "detproc/linalg.hpp"

#include <cmath>

namespace detproc {

double lu_det(Matrix m) {
    const int n = m.n;
    double det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::fabs(m(k, k));
        for (int i = k + 1; i < n; ++i) {
            const double v = std::fabs(m(i, k));
            if (v > best) { best = v; piv = i; }
        }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(piv, j), m(k, j));
            det = -det;
        }
        det *= m(k, k);
        const double inv = 1.0 / m(k, k);
        for (int i = k + 1; i < n; ++i) {
            const double f = m(i, k) * inv;
            if (f == 0.0) continue;
            for (int j = k + 1; j < n; ++j) m(i, j) -= f * m(k, j);
        }
    }
    return det;
}

long double lu_det_ld(const Matrix& m) {
    const int n = m.n;
    std::vector<long double> a(m.a.begin(), m.a.end());
    auto at = [&](int i, int j) -> long double& { return a[std::size_t(i) * n + j]; };
    long double det = 1.0L;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        long double best = fabsl(at(k, k));
        for (int i = k + 1; i < n; ++i)
            if (fabsl(at(i, k)) > best) { best = fabsl(at(i, k)); piv = i; }
        if (best == 0.0L) return 0.0L;
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(at(piv, j), at(k, j));
            det = -det;
        }
        det *= at(k, k);
        for (int i = k + 1; i < n; ++i) {
            const long double f = at(i, k) / at(k, k);
            if (f == 0.0L) continue;
            for (int j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
        }
    }
    return det;
}

Matrix lu_inverse(const Matrix& m) {
    const int n = m.n;
    std::vector<long double> a(m.a.begin(), m.a.end());
    std::vector<long double> inv(std::size_t(n) * n, 0.0L);
    for (int i = 0; i < n; ++i) inv[std::size_t(i) * n + i] = 1.0L;
    auto A = [&](int i, int j) -> long double& { return a[std::size_t(i) * n + j]; };
    auto B = [&](int i, int j) -> long double& { return inv[std::size_t(i) * n + j]; };

    for (int k = 0; k < n; ++k) {
        int piv = k;
        long double best = fabsl(A(k, k));
        for (int i = k + 1; i < n; ++i)
            if (fabsl(A(i, k)) > best) { best = fabsl(A(i, k)); piv = i; }
        if (best == 0.0L) throw std::runtime_error("linalg: singular matrix in lu_inverse");
        if (piv != k)
            for (int j = 0; j < n; ++j) {
                std::swap(A(piv, j), A(k, j));
                std::swap(B(piv, j), B(k, j));
            }
        const long double d = A(k, k);
        for (int j = 0; j < n; ++j) { A(k, j) /= d; B(k, j) /= d; }
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const long double f = A(i, k);
            if (f == 0.0L) continue;
            for (int j = 0; j < n; ++j) {
                A(i, j) -= f * A(k, j);
                B(i, j) -= f * B(k, j);
            }
        }
    }
    Matrix out(n);
    for (std::size_t i = 0; i < inv.size(); ++i) out.a[i] = double(inv[i]);
    return out;
}

double norm1(const Matrix& m) {
    double best = 0.0;
    for (int j = 0; j < m.n; ++j) {
        double s = 0.0;
        for (int i = 0; i < m.n; ++i) s += std::fabs(m(i, j));
        best = std::max(best, s);
    }
    return best;
}

double condition_number(const Matrix& m) {
    if (m.n == 0) return 1.0;
    try {
        Matrix inv = lu_inverse(m);
        return norm1(m) * norm1(inv);
    } catch (const std::runtime_error&) {
        return std::numeric_limits<double>::infinity();
    }
}

std::vector<std::complex<double>>
solve_complex(std::vector<std::complex<double>> a, int n,
              std::vector<std::complex<double>> b) {
    auto A = [&](int i, int j) -> std::complex<double>& {
        return a[std::size_t(i) * n + j];
    };
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(A(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(A(i, k)) > best) { best = std::abs(A(i, k)); piv = i; }
        if (best == 0.0) throw std::runtime_error("linalg: singular complex system");
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(A(piv, j), A(k, j));
            std::swap(b[piv], b[k]);
        }
        for (int i = k + 1; i < n; ++i) {
            const std::complex<double> f = A(i, k) / A(k, k);
            if (f == std::complex<double>(0.0)) continue;
            for (int j = k + 1; j < n; ++j) A(i, j) -= f * A(k, j);
            b[i] -= f * b[k];
        }
    }
    for (int i = n - 1; i >= 0; --i) {
        std::complex<double> s = b[i];
        for (int j = i + 1; j < n; ++j) s -= A(i, j) * b[j];
        b[i] = s / A(i, i);
    }
    return b;
}

} // namespace detproc
