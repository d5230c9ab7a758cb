#include "detproc/orthopoly.hpp"

#include <cmath>

#include "detproc/quad.hpp"

namespace detproc {

namespace {

constexpr double kPi = 3.14159265358979323846;

// Coefficients of the orthonormalized three-term recurrence
// q_n = (a_n x + b_n) q_{n-1} - c_n q_{n-2}, plus the degree-0 value.
struct Recurrence {
    double q0;
    double (*a)(int n, double p);
    double (*b)(int n, double p);
    double (*c)(int n, double p);
};

Recurrence recurrence_for(const PolyFamily& f) {
    switch (f.kind) {
        case PolyKind::HermiteStandard:
            return {std::pow(kPi, -0.25),
                    [](int n, double) { return std::sqrt(2.0 / n); },
                    [](int, double) { return 0.0; },
                    [](int n, double) { return std::sqrt((n - 1.0) / n); }};
        case PolyKind::HermiteScaledGUE:
            return {std::pow(2.0 * kPi * f.param, -0.25),
                    [](int n, double p) { return 1.0 / std::sqrt(n * p); },
                    [](int, double) { return 0.0; },
                    [](int n, double) { return std::sqrt((n - 1.0) / n); }};
        case PolyKind::Charlier:
            return {1.0,
                    [](int n, double t) { return 1.0 / std::sqrt(t * n); },
                    [](int n, double t) { return -(n - 1.0 + t) / std::sqrt(t * n); },
                    [](int n, double) { return std::sqrt((n - 1.0) / n); }};
    }
    throw std::logic_error("recurrence_for: unknown kind");
}

// q_{n-1}, q_n and their derivatives at x, optionally premultiplied by a
// starting factor (sqrt of the weight, for the stable evaluation path).
struct QPair {
    double qm1, qn;   // q_{n-1}, q_n
    double dqm1, dqn; // derivatives
};

QPair eval_pair(const PolyFamily& f, int n, double x, double start_factor) {
    const Recurrence rec = recurrence_for(f);
    double prev = 0.0, cur = rec.q0 * start_factor;
    double dprev = 0.0, dcur = 0.0;
    for (int k = 1; k <= n; ++k) {
        const double a = rec.a(k, f.param), b = rec.b(k, f.param),
                     c = rec.c(k, f.param);
        const double next = (a * x + b) * cur - c * prev;
        const double dnext = a * cur + (a * x + b) * dcur - c * dprev;
        prev = cur;
        cur = next;
        dprev = dcur;
        dcur = dnext;
    }
    return {prev, cur, dprev, dcur};
}

} // namespace

PolyFamily::PolyFamily(PolyKind k, double p, int maxdeg)
    : kind(k), param(p), max_degree(maxdeg) {
    if (maxdeg < 0) throw std::invalid_argument("PolyFamily: max_degree < 0");
    if (k == PolyKind::Charlier && !(p > 0.0))
        throw std::invalid_argument("PolyFamily: Charlier requires t > 0");
    if (k == PolyKind::HermiteScaledGUE && !(p > 0.0))
        throw std::invalid_argument("PolyFamily: HermiteScaledGUE requires N > 0");
}

double eval_hermite_standard(int k, double y) {
    if (k < 0) throw std::invalid_argument("eval_hermite_standard: k < 0");
    if (k > 200)
        throw std::invalid_argument(
            "eval_hermite_standard: degree > 200 rejected (overflow range)");
    double prev = 1.0;
    if (k == 0) return prev;
    double cur = 2.0 * y;
    for (int j = 1; j < k; ++j) {
        const double next = 2.0 * y * cur - 2.0 * j * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

double charlier(int n, double x, double t) {
    if (n < 0) throw std::invalid_argument("charlier: n < 0");
    if (!(t > 0.0)) throw std::invalid_argument("charlier: t <= 0");
    double prev = 1.0;
    if (n == 0) return prev;
    double cur = 1.0 - x / t;
    for (int k = 1; k < n; ++k) {
        const double next = ((k + t - x) * cur - k * prev) / t;
        prev = cur;
        cur = next;
    }
    return cur;
}

double weight(const PolyFamily& f, double x) {
    switch (f.kind) {
        case PolyKind::HermiteStandard:
            return std::exp(-x * x);
        case PolyKind::HermiteScaledGUE:
            return std::exp(-x * x / (2.0 * f.param));
        case PolyKind::Charlier:
            if (x < 0.0) return 0.0;
            return std::exp(-f.param + x * std::log(f.param) - std::lgamma(x + 1.0));
    }
    throw std::logic_error("weight: unknown kind");
}

double leading_coeff(const PolyFamily& f, int k) {
    switch (f.kind) {
        case PolyKind::HermiteStandard:
            return std::exp(0.5 * (k * std::log(2.0) - std::lgamma(k + 1.0)) -
                            0.25 * std::log(kPi));
        case PolyKind::HermiteScaledGUE:
            return std::exp(-0.25 * std::log(2.0 * kPi * f.param) -
                            0.5 * std::lgamma(k + 1.0) -
                            0.5 * k * std::log(f.param));
        case PolyKind::Charlier:
            return std::exp(-0.5 * (k * std::log(f.param) + std::lgamma(k + 1.0)));
    }
    throw std::logic_error("leading_coeff: unknown kind");
}

double eval_q(const PolyFamily& f, int k, double x) {
    if (k > f.max_degree)
        throw std::invalid_argument("eval_q: degree above max_degree");
    return eval_pair(f, k, x, 1.0).qn;
}

double eval_orthonormal(const PolyFamily& f, int k, double x) {
    if (k > f.max_degree)
        throw std::invalid_argument("eval_orthonormal: degree above max_degree");
    if (f.kind == PolyKind::Charlier) return charlier(k, x, f.param);
    return eval_q(f, k, x);
}

double eval_weighted(const PolyFamily& f, int k, double x) {
    if (k > f.max_degree)
        throw std::invalid_argument("eval_weighted: degree above max_degree");
    return eval_pair(f, k, x, std::sqrt(weight(f, x))).qn;
}

RecurrenceCoeffs recurrence_coeffs(const PolyFamily& f) {
    RecurrenceCoeffs rc;
    const int m = f.max_degree;
    rc.A.resize(m);
    rc.B.resize(m);
    rc.C.resize(m);
    for (int n = 1; n <= m; ++n) {
        rc.A[n - 1] = leading_coeff(f, n) / leading_coeff(f, n - 1);
        rc.C[n - 1] = n >= 2 ? rc.A[n - 1] / rc.A[n - 2] : 0.0;
        rc.B[n - 1] = -rc.A[n - 1] * first_moment_q(f, n);
    }
    return rc;
}

double christoffel_darboux(const PolyFamily& f, int n, double x, double y) {
    if (n < 1 || n > f.max_degree)
        throw std::invalid_argument("christoffel_darboux: need 1 <= N <= max_degree");
    const double uratio = leading_coeff(f, n - 1) / leading_coeff(f, n);
    const double scale = 1.0 + std::fabs(x) + std::fabs(y);
    if (std::fabs(x - y) <= 1e-8 * scale) {
        const double mid = 0.5 * (x + y);
        const QPair p = eval_pair(f, n, mid, 1.0);
        return uratio * (p.dqn * p.qm1 - p.dqm1 * p.qn);
    }
    const QPair px = eval_pair(f, n, x, 1.0);
    const QPair py = eval_pair(f, n, y, 1.0);
    return uratio * (px.qn * py.qm1 - px.qm1 * py.qn) / (x - y);
}

double christoffel_darboux_weighted(const PolyFamily& f, int n, double x,
                                    double y) {
    if (n < 1 || n > f.max_degree)
        throw std::invalid_argument("christoffel_darboux_weighted: bad N");
    const double uratio = leading_coeff(f, n - 1) / leading_coeff(f, n);
    const double scale = 1.0 + std::fabs(x) + std::fabs(y);
    if (std::fabs(x - y) <= 1e-8 * scale) {
        const double mid = 0.5 * (x + y);
        const QPair p = eval_pair(f, n, mid, 1.0);
        return weight(f, mid) * uratio * (p.dqn * p.qm1 - p.dqm1 * p.qn);
    }
    const double sx = std::sqrt(weight(f, x)), sy = std::sqrt(weight(f, y));
    const QPair px = eval_pair(f, n, x, sx);
    const QPair py = eval_pair(f, n, y, sy);
    return uratio * (px.qn * py.qm1 - px.qm1 * py.qn) / (x - y);
}

namespace {

// Truncated Poisson-weight lattice sum with a certified geometric tail.
// integrand(x) must be a polynomial of degree <= deg in x.
double charlier_lattice_sum(double t, int deg,
                            const std::function<double(double)>& integrand) {
    double sum = 0.0, max_term = 0.0;
    // Past all Charlier zeros and past the Poisson bulk the terms decay
    // faster than a ratio-1/2 geometric series.
    const long safe = long(std::ceil(2.0 * t + 2.0 * deg + 20.0 +
                                     6.0 * std::sqrt(t * (deg + 1.0))));
    const long cap = 200000;
    double logw = -t; // log of e^{-t} t^x / x! at x = 0
    for (long x = 0; x <= cap; ++x) {
        const double term = std::exp(logw) * integrand(double(x));
        sum += term;
        max_term = std::max(max_term, std::fabs(term));
        if (x >= safe && 2.0 * std::fabs(term) < 1e-16 * std::max(1.0, max_term))
            return sum;
        logw += std::log(t) - std::log(double(x + 1));
    }
    throw TailBoundError("charlier_lattice_sum: tail bound not met before cap");
}

} // namespace

double inner_product(const PolyFamily& f, int i, int j) {
    if (i > f.max_degree || j > f.max_degree)
        throw std::invalid_argument("inner_product: degree above max_degree");
    const int m = std::max(64, 2 * f.max_degree + 8);
    switch (f.kind) {
        case PolyKind::HermiteStandard: {
            const QuadRule q = gauss_hermite_total(m);
            double s = 0.0;
            for (int l = 0; l < m; ++l)
                s += q.w[l] * eval_weighted(f, i, q.x[l]) * eval_weighted(f, j, q.x[l]);
            return s;
        }
        case PolyKind::HermiteScaledGUE: {
            const QuadRule q = gauss_hermite_total(m);
            const double scale = std::sqrt(2.0 * f.param);
            double s = 0.0;
            for (int l = 0; l < m; ++l) {
                const double x = scale * q.x[l];
                s += q.w[l] * eval_weighted(f, i, x) * eval_weighted(f, j, x);
            }
            return scale * s;
        }
        case PolyKind::Charlier: {
            const double t = f.param;
            return charlier_lattice_sum(t, i + j, [&](double x) {
                return charlier(i, x, t) * charlier(j, x, t);
            });
        }
    }
    throw std::logic_error("inner_product: unknown kind");
}

double first_moment_q(const PolyFamily& f, int n) {
    const int m = std::max(64, 2 * f.max_degree + 10);
    switch (f.kind) {
        case PolyKind::HermiteStandard: {
            const QuadRule q = gauss_hermite_total(m);
            double s = 0.0;
            for (int l = 0; l < m; ++l) {
                const double v = eval_weighted(f, n - 1, q.x[l]);
                s += q.w[l] * q.x[l] * v * v;
            }
            return s;
        }
        case PolyKind::HermiteScaledGUE: {
            const QuadRule q = gauss_hermite_total(m);
            const double scale = std::sqrt(2.0 * f.param);
            double s = 0.0;
            for (int l = 0; l < m; ++l) {
                const double x = scale * q.x[l];
                const double v = eval_weighted(f, n - 1, x);
                s += q.w[l] * x * v * v;
            }
            return scale * s;
        }
        case PolyKind::Charlier: {
            const double t = f.param;
            return charlier_lattice_sum(t, 2 * n - 1, [&](double x) {
                const double v = eval_q(f, n - 1, x);
                return x * v * v;
            });
        }
    }
    throw std::logic_error("first_moment_q: unknown kind");
}

} // namespace detproc
