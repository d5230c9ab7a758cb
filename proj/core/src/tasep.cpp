#include "detproc/tasep.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <map>

#include "detproc/contour.hpp"
#include "detproc/linalg.hpp"
#include "detproc/orthopoly.hpp"

namespace detproc {
namespace tasep {

namespace {
using cd = std::complex<double>;

// z^k for integer k through exp/log; single-valued for integer exponents.
cd ipow(cd z, long k) {
    if (k == 0) return 1.0;
    return std::exp(double(k) * std::log(z));
}

double log_poisson(long m, double t) {
    if (t == 0.0) return m == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
    return -t + double(m) * std::log(t) - std::lgamma(double(m) + 1.0);
}

} // namespace

void ParticleConfig::validate() const {
    if (positions.size() != initial.size())
        throw std::invalid_argument("ParticleConfig: positions/initial size mismatch");
    for (std::size_t i = 0; i + 1 < positions.size(); ++i) {
        if (positions[i] <= positions[i + 1])
            throw std::invalid_argument("ParticleConfig: exclusion violated");
        if (initial[i] <= initial[i + 1])
            throw std::invalid_argument("ParticleConfig: initial ordering violated");
    }
    for (std::size_t i = 0; i < positions.size(); ++i)
        if (positions[i] < initial[i])
            throw std::invalid_argument("ParticleConfig: particle left of its start");
}

ParticleConfig step_initial(int n) {
    ParticleConfig c;
    c.positions.resize(n);
    c.initial.resize(n);
    for (int k = 1; k <= n; ++k) c.positions[k - 1] = c.initial[k - 1] = -k;
    return c;
}

double eval_F(int n, long x, double t) {
    if (std::abs(n) > 40 || std::labs(x) > 500 || t > 100.0 || t < 0.0)
        throw std::invalid_argument("eval_F: outside supported range");
    if (n <= 0 && x < n) return 0.0; // integrand analytic, no pole
    if (n == 0) return x >= 0 ? std::exp(log_poisson(x, t)) : 0.0;

    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    const long wpow = long(n) - x - 1;
    auto integrand = [=](cd w) -> cd {
        return sign * std::exp(t * (w - 1.0) - double(n) * std::log(1.0 - w) +
                               double(wpow) * std::log(w));
    };

    ContourSpec spec;
    if (n <= 0) {
        spec.center = 0.0;
        double r = 1.0;
        if (t > 1e-12) {
            r = double(x - n + 1) / t;            // saddle of w^{-(x-n+1)} e^{tw}
            r = std::min(r, 600.0 / t);           // keep e^{tr} in range
            r = std::clamp(r, 0.3, 1e5);
        }
        spec.radius = r;
    } else {
        spec.center = 0.5;
        double r = 0.8;
        if (t > 1e-12 && x - n + 1 > 0)
            r = std::clamp(0.5 + double(x - n + 1) / t, 0.8, 0.5 + 600.0 / t);
        spec.radius = r;
    }
    const ContourResult res = contour_integral_adaptive(spec, integrand, 1e-10);
    if (!res.converged)
        throw ContourError("eval_F: node doubling did not converge (delta " +
                           std::to_string(res.last_delta) + ")");
    return res.value.real();
}

double transition_prob(const ParticleConfig& target, double t) {
    target.validate();
    const int n = target.size();
    if (n > 10) throw std::invalid_argument("transition_prob: N <= 10");
    if (t == 0.0) {
        return target.positions == target.initial ? 1.0 : 0.0;
    }
    Matrix m(n);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j)
            m(i - 1, j - 1) = eval_F(
                i - j, target.positions[n - i] - target.initial[n - j], t);
    const double g = lu_det(m);
    if (g < -1e-12)
        throw std::runtime_error("transition_prob: negative probability " +
                                 std::to_string(g));
    return std::max(0.0, g);
}

ParticleConfig simulate(const ParticleConfig& ic, double t, UpdateRule rule,
                        Rng& rng) {
    ic.validate();
    ParticleConfig c = ic;
    const int n = c.size();
    auto movable = [&](int i) {
        return i == 0 || c.positions[i - 1] > c.positions[i] + 1;
    };
    switch (rule.kind) {
        case UpdateRule::Continuous: {
            double tau = 0.0;
            for (;;) {
                tau += rng.exponential(double(n));
                if (tau > t) break;
                const int i = int(rng.below(n));
                if (movable(i)) ++c.positions[i];
            }
            c.time += t;
            break;
        }
        case UpdateRule::Sequential: {
            const long steps = std::lround(t);
            for (long s = 0; s < steps; ++s)
                for (int i = 0; i < n; ++i) // right to left; convoys allowed
                    if (movable(i) && rng.bernoulli(rule.p)) ++c.positions[i];
            c.time += double(steps);
            break;
        }
        case UpdateRule::Parallel: {
            const long steps = std::lround(t);
            std::vector<char> sel(n);
            for (long s = 0; s < steps; ++s) {
                for (int i = 0; i < n; ++i) sel[i] = movable(i);
                for (int i = 0; i < n; ++i)
                    if (sel[i] && rng.bernoulli(rule.p)) ++c.positions[i];
            }
            c.time += double(steps);
            break;
        }
    }
    c.validate();
    return c;
}

double kernel_binom(long m, long j) {
    if (m < 0 || j < 0 || m < j) return 0.0;
    double v = 1.0;
    const long jj = std::min(j, m - j);
    for (long i = 1; i <= jj; ++i) v *= double(m - jj + i) / double(i);
    return v;
}

double phi_shift(int n1, int n2, long x1, long x2) {
    if (n1 >= n2) return 0.0;
    return kernel_binom(x1 - x2 - 1, n2 - n1 - 1);
}

double psi_step(int n, int k, long x, double t) {
    const long m = x + n;
    if (m < 0) return 0.0;
    if (k >= 0) return std::exp(log_poisson(m, t)) * charlier(k, double(m), t);
    const long j = -k;
    // coefficient of w^m in e^{tw} (1-w)^{-j}, times e^{-t}
    double s = 0.0;
    for (long l = 0; l <= m; ++l) {
        const double logb =
            std::lgamma(double(j + l)) - std::lgamma(double(j)) - std::lgamma(double(l) + 1.0);
        s += std::exp(logb + log_poisson(m - l, t));
    }
    return s;
}

double phi_step(int n, int j, long x, double t) {
    if (j < 0) return 0.0;
    const long m = x + n;
    return std::exp(j * std::log(t) - std::lgamma(double(j) + 1.0)) *
           charlier(j, double(m), t);
}

double kernel_step(int n1, long x1, int n2, long x2, double t) {
    double s = 0.0;
    for (int k = 1; k <= n2; ++k)
        s += psi_step(n1, n1 - k, x1, t) * phi_step(n2, n2 - k, x2, t);
    if (n1 < n2) s -= phi_shift(n1, n2, x1, x2);
    return s;
}

double kernel_step_contour(int n1, long x1, int n2, long x2, double t) {
    if (n1 < n2)
        throw std::invalid_argument("kernel_step_contour: needs n1 >= n2");
    ContourSpec gamma0{cd(0.0, 0.0), 0.4, 64};
    ContourSpec gamma1{cd(1.0, 0.0), 0.4, 64};
    auto f = [=](cd w, cd z) -> cd {
        const cd lg = t * (w - z) + double(n1) * std::log(1.0 - w) -
                      double(n2) * std::log(1.0 - z) +
                      double(x2 + n2) * std::log(z) -
                      double(x1 + n1 + 1) * std::log(w);
        return std::exp(lg) / (z - w);
    };
    const ContourResult res = double_contour_adaptive(gamma0, gamma1, f, 1e-8, 1 << 12);
    if (!res.converged)
        throw ContourError("kernel_step_contour: no convergence (delta " +
                           std::to_string(res.last_delta) + ")");
    return -res.value.real();
}

namespace {

double kernel_sequential_contour(int n1, long x1, int n2, long x2, long t,
                                 double p) {
    ContourSpec gamma0{cd(0.0, 0.0), 0.4, 64};
    ContourSpec gamma1{cd(1.0, 0.0), 0.4, 64};
    auto f = [=](cd w, cd z) -> cd {
        const cd lg = double(t) * (std::log(1.0 - p + p * w) - std::log(1.0 - p + p * z)) +
                      double(n1) * std::log(1.0 - w) - double(n2) * std::log(1.0 - z) +
                      double(x2 + n2) * std::log(z) - double(x1 + n1 + 1) * std::log(w);
        return std::exp(lg) / (z - w);
    };
    const ContourResult res = double_contour_adaptive(gamma0, gamma1, f, 1e-8, 1 << 12);
    if (!res.converged)
        throw ContourError("kernel_discrete(sequential): no convergence");
    double val = -res.value.real();
    if (n1 < n2) val -= phi_shift(n1, n2, x1, x2);
    return val;
}

double parallel_phi_shift(int n1, int n2, long x1, long x2, double p, double rw) {
    if (n2 <= n1) return 0.0;
    ContourSpec gm1{cd(-1.0, 0.0), rw, 64};
    auto f = [=](cd w) -> cd {
        const cd lg = double(n2 - n1) * std::log(1.0 + p * w) +
                      double(n1 - n2) * std::log(w) -
                      double((x1 + n1) - (x2 + n2) + 1) * std::log(1.0 + w);
        return std::exp(lg);
    };
    const ContourResult res = contour_integral_adaptive(gm1, f, 1e-9);
    if (!res.converged)
        throw ContourError("kernel_discrete(parallel): phi part no convergence");
    return res.value.real();
}

double kernel_parallel_contour(int n1, long x1, int n2, long x2, long t,
                               double p) {
    // w lives on a circle around -1 that must not reach the (1+pw) root at
    // -1/p; z on a small circle around 0.
    const double rw = std::min(0.4, 0.5 * (1.0 - p) / std::max(p, 1e-9));
    ContourSpec gamma0{cd(0.0, 0.0), 0.4, 64};
    ContourSpec gm1{cd(-1.0, 0.0), rw, 64};
    auto f = [=](cd z, cd w) -> cd {
        const cd lg = double(t - n1 + 1) * std::log(1.0 + p * w) -
                      double(t - n2 + 1) * std::log(1.0 + p * z) +
                      double(n1) * std::log(w) - double(n2) * std::log(z) +
                      double(x2 + n2) * std::log(1.0 + z) -
                      double(x1 + n1 + 1) * std::log(1.0 + w);
        return std::exp(lg) / (w - z);
    };
    const ContourResult res = double_contour_adaptive(gamma0, gm1, f, 1e-8, 1 << 12);
    if (!res.converged)
        throw ContourError("kernel_discrete(parallel): no convergence");
    double val = res.value.real();
    val -= parallel_phi_shift(n1, n2, x1, x2, p, rw);
    return val;
}

} // namespace

double kernel_discrete(int n1, long x1, int n2, long x2, long t, UpdateRule rule) {
    if (t < 0) throw std::invalid_argument("kernel_discrete: t >= 0");
    switch (rule.kind) {
        case UpdateRule::Sequential:
            return kernel_sequential_contour(n1, x1, n2, x2, t, rule.p);
        case UpdateRule::Parallel:
            return kernel_parallel_contour(n1, x1, n2, x2, t, rule.p);
        default:
            throw std::invalid_argument("kernel_discrete: discrete rules only");
    }
}

double psi_general(int n, int i, long x, double t, const std::vector<long>& y) {
    if (n - i < 1 || n - i > int(y.size()))
        throw std::invalid_argument("psi_general: index out of range");
    const long m = x - y[n - i - 1] + i;
    if (m < 0) return 0.0;
    double s = 0.0;
    if (i >= 0) {
        const long bmax = std::min<long>(i, m);
        for (long b = 0; b <= bmax; ++b) {
            const double sign = (b % 2 == 0) ? 1.0 : -1.0;
            s += sign * kernel_binom(i, b) * std::exp(log_poisson(m - b, t));
        }
    } else {
        const long j = -i;
        for (long l = 0; l <= m; ++l) {
            const double logb = std::lgamma(double(j + l)) - std::lgamma(double(j)) -
                                std::lgamma(double(l) + 1.0);
            s += std::exp(logb + log_poisson(m - l, t));
        }
    }
    return s;
}

namespace {

// Numeric Phi family for general initial data: polynomials of degree < n on
// a scaled basis, fixed by the lattice biorthogonality against Psi^n.
struct GeneralPhi {
    long lo = 0, hi = 0;
    double center = 0.0, scale = 1.0;
    Matrix coef; // coef(j, l): Phi_j = sum_l coef(j,l) ((x-c)/s)^l

    double eval(int j, long x) const {
        const double u = (double(x) - center) / scale;
        double s = 0.0, up = 1.0;
        for (int l = 0; l < coef.n; ++l) {
            s += coef(j, l) * up;
            up *= u;
        }
        return s;
    }
};

GeneralPhi build_general_phi(int n, double t, const std::vector<long>& y,
                             long smax) {
    GeneralPhi gp;
    long ymin = y[0], ymax = y[0];
    for (long v : y) { ymin = std::min(ymin, v); ymax = std::max(ymax, v); }
    gp.lo = ymin - n - 2;
    gp.hi = std::max(smax, ymax + long(std::ceil(t + 6.0 * std::sqrt(t + 1.0)))) +
            2 * n + 12;
    gp.center = 0.5 * double(gp.lo + gp.hi);
    gp.scale = std::max(4.0, 0.25 * double(gp.hi - gp.lo));

    Matrix a(n);
    for (int i = 0; i < n; ++i)
        for (int l = 0; l < n; ++l) {
            double s = 0.0;
            for (long x = gp.lo; x <= gp.hi; ++x) {
                const double u = (double(x) - gp.center) / gp.scale;
                s += psi_general(n, i, x, t, y) * std::pow(u, l);
            }
            a(i, l) = s;
        }
    const double cond = condition_number(a);
    if (!(cond < 1e12))
        throw std::runtime_error(
            "joint_distribution: general-y Gram condition " + std::to_string(cond) +
            " exceeds 1e12");
    gp.coef = lu_inverse(a);
    return gp;
}

} // namespace

double joint_distribution(const JointQuery& q) {
    const int np = q.n_particles;
    const int m = int(q.sigma.size());
    if (m < 1 || int(q.thresholds.size()) != m)
        throw std::invalid_argument("joint_distribution: bad query shape");
    for (int k = 0; k < m; ++k) {
        if (q.sigma[k] < 1 || q.sigma[k] > np)
            throw std::invalid_argument("joint_distribution: sigma out of range");
        if (k > 0 && q.sigma[k] <= q.sigma[k - 1])
            throw std::invalid_argument("joint_distribution: sigma not increasing");
    }
    std::vector<long> y(np);
    if (q.initial) {
        y = *q.initial;
        if (int(y.size()) != np)
            throw std::invalid_argument("joint_distribution: initial size mismatch");
    } else {
        for (int k = 1; k <= np; ++k) y[k - 1] = -k;
    }
    const bool step_ic = [&] {
        for (int k = 1; k <= np; ++k)
            if (y[k - 1] != -k) return false;
        return true;
    }();

    // Particles only move right: thresholds at or below the start are free.
    bool trivial = true;
    for (int k = 0; k < m; ++k)
        if (q.thresholds[k] > y[q.sigma[k] - 1]) trivial = false;
    if (trivial) return 1.0;
    if (q.time <= 0.0) return 0.0; // nothing has moved yet

    if (!step_ic && q.update.kind != UpdateRule::Continuous)
        throw std::invalid_argument(
            "joint_distribution: general initial data only for continuous time");

    long smax = q.thresholds[0];
    for (long s : q.thresholds) smax = std::max(smax, s);

    std::optional<GeneralPhi> gphi;
    std::map<int, GeneralPhi> gphi_per_level;
    if (!step_ic) {
        for (int k = 0; k < m; ++k) {
            const int lvl = q.sigma[k];
            gphi_per_level.emplace(lvl, build_general_phi(lvl, q.time, y, smax));
        }
    }

    auto kernel_entry = [&](int n1, long x1, int n2, long x2) -> double {
        switch (q.update.kind) {
            case UpdateRule::Continuous: {
                if (step_ic) return kernel_step(n1, x1, n2, x2, q.time);
                const GeneralPhi& gp = gphi_per_level.at(n2);
                double s = 0.0;
                for (int k = 1; k <= n2; ++k)
                    s += psi_general(n1, n1 - k, x1, q.time, y) * gp.eval(n2 - k, x2);
                if (n1 < n2) s -= phi_shift(n1, n2, x1, x2);
                return s;
            }
            default:
                return kernel_discrete(n1, x1, n2, x2, std::lround(q.time), q.update);
        }
    };

    auto evaluate = [&](long extend) -> double {
        std::vector<std::pair<int, long>> sites; // (level, x)
        for (int k = 0; k < m; ++k) {
            const int lvl = q.sigma[k];
            const long lo = y[lvl - 1] - 1 - extend;
            const long hi = q.thresholds[k] - 1;
            for (long x = lo; x <= hi; ++x) sites.push_back({lvl, x});
        }
        const int dim = int(sites.size());
        if (dim == 0) return 1.0;
        Matrix mm(dim);
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j) {
                const double kij =
                    kernel_entry(sites[i].first, sites[i].second, sites[j].first,
                                 sites[j].second);
                mm(i, j) = (i == j ? 1.0 : 0.0) - kij;
            }
        return double(lu_det_ld(mm));
    };

    const double p0 = evaluate(0);
    const double p1 = evaluate(6);
    if (std::fabs(p1 - p0) > 1e-9)
        throw std::runtime_error(
            "joint_distribution: window enlargement shifted the value by " +
            std::to_string(std::fabs(p1 - p0)));
    (void)gphi;
    return std::min(1.0, std::max(0.0, p1));
}

double biorthogonality_defect(int n, int i, int j, double t) {
    const long hi = long(std::ceil(t + 12.0 * std::sqrt(t + 1.0))) + 2 * (i + j) + 60;
    double s = 0.0;
    for (long x = -n; x <= hi - n; ++x)
        s += psi_step(n, i, x, t) * phi_step(n, j, x, t);
    return s;
}

} // namespace tasep
} // namespace detproc
