#pragma once
// Trapezoidal contour quadrature on circles. For integrands analytic in an
// annulus around the circle the trapezoid rule converges geometrically, so
// node doubling with a fixed-point check is both the error estimate and the
// stopping rule.

#include <complex>
#include <functional>
#include <stdexcept>

namespace detproc {

struct ContourError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ContourSpec {
    std::complex<double> center;
    double radius = 1.0;
    int nodes = 64; // power of two, >= 64
};

struct ContourResult {
    std::complex<double> value{0.0, 0.0};
    bool converged = false;
    int nodes = 0;
    double last_delta = 0.0;
};

// (1/2 pi i) closed-circle integral of f, fixed node count.
std::complex<double>
contour_integral(const ContourSpec& spec,
                 const std::function<std::complex<double>(std::complex<double>)>& f);

// Same with node doubling until two successive values differ < tol.
ContourResult contour_integral_adaptive(
    ContourSpec spec,
    const std::function<std::complex<double>(std::complex<double>)>& f,
    double tol, int max_nodes = 1 << 15);

// (1/2 pi i)^2 double integral over two circles, node doubling on both.
ContourResult double_contour_adaptive(
    ContourSpec outer, ContourSpec inner,
    const std::function<std::complex<double>(std::complex<double>,
                                             std::complex<double>)>& f,
    double tol, int max_nodes = 1 << 12);

} // namespace detproc
