#include "detproc/contour.hpp"

#include <cmath>

namespace detproc {

namespace {
using cd = std::complex<double>;
constexpr double kTwoPi = 6.28318530717958647692529;
} // namespace

cd contour_integral(const ContourSpec& spec, const std::function<cd(cd)>& f) {
    const int m = spec.nodes;
    cd sum = 0.0;
    for (int j = 0; j < m; ++j) {
        const double th = kTwoPi * j / m;
        const cd dir(std::cos(th), std::sin(th));
        sum += f(spec.center + spec.radius * dir) * dir;
    }
    return sum * (spec.radius / double(m));
}

ContourResult contour_integral_adaptive(ContourSpec spec,
                                        const std::function<cd(cd)>& f,
                                        double tol, int max_nodes) {
    if (spec.nodes < 64) spec.nodes = 64;
    cd prev = contour_integral(spec, f);
    ContourResult res;
    while (spec.nodes < max_nodes) {
        spec.nodes *= 2;
        const cd cur = contour_integral(spec, f);
        const double delta = std::abs(cur - prev);
        if (delta < tol) {
            res.value = cur;
            res.converged = true;
            res.nodes = spec.nodes;
            res.last_delta = delta;
            return res;
        }
        prev = cur;
        res.last_delta = delta;
    }
    res.value = prev;
    res.nodes = spec.nodes;
    res.converged = false;
    return res;
}

namespace {

cd double_contour_fixed(const ContourSpec& outer, const ContourSpec& inner,
                        const std::function<cd(cd, cd)>& f) {
    const int mo = outer.nodes, mi = inner.nodes;
    // Precompute inner ring.
    std::vector<cd> ipts(mi), idirs(mi);
    for (int k = 0; k < mi; ++k) {
        const double th = kTwoPi * k / mi;
        idirs[k] = cd(std::cos(th), std::sin(th));
        ipts[k] = inner.center + inner.radius * idirs[k];
    }
    cd sum = 0.0;
    for (int j = 0; j < mo; ++j) {
        const double th = kTwoPi * j / mo;
        const cd odir(std::cos(th), std::sin(th));
        const cd w = outer.center + outer.radius * odir;
        cd isum = 0.0;
        for (int k = 0; k < mi; ++k) isum += f(w, ipts[k]) * idirs[k];
        sum += isum * odir;
    }
    return sum * (outer.radius * inner.radius / double(mo) / double(mi));
}

} // namespace

ContourResult double_contour_adaptive(ContourSpec outer, ContourSpec inner,
                                      const std::function<cd(cd, cd)>& f,
                                      double tol, int max_nodes) {
    if (outer.nodes < 64) outer.nodes = 64;
    if (inner.nodes < 64) inner.nodes = 64;
    cd prev = double_contour_fixed(outer, inner, f);
    ContourResult res;
    while (outer.nodes < max_nodes) {
        outer.nodes *= 2;
        inner.nodes *= 2;
        const cd cur = double_contour_fixed(outer, inner, f);
        const double delta = std::abs(cur - prev);
        if (delta < tol) {
            res.value = cur;
            res.converged = true;
            res.nodes = outer.nodes;
            res.last_delta = delta;
            return res;
        }
        prev = cur;
        res.last_delta = delta;
    }
    res.value = prev;
    res.nodes = outer.nodes;
    res.converged = false;
    return res;
}

} // namespace detproc
