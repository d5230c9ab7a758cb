#pragma once
// Gaussian quadrature. Hermite nodes come from the Jacobi matrix through the
// tridiagonal QL solver; the "total" weights below absorb e^{+x^2} so that
//   integral f(x) dx  ~=  sum_i w_i f(x_i)
// is exact whenever f = e^{-x^2} * polynomial(deg <= 2M-1). That is the shape
// of every weighted-polynomial integrand in this project, and it keeps all
// evaluated quantities O(1) instead of juggling huge H_k against tiny weights.

#include <functional>
#include <vector>

namespace detproc {

struct QuadRule {
    std::vector<double> x;
    std::vector<double> w;
};

// Gauss-Hermite rule with total weights (see header comment). M >= 1.
QuadRule gauss_hermite_total(int m);

// Gauss-Legendre rule on [-1, 1].
QuadRule gauss_legendre(int m);

// Gauss-Legendre rule mapped to [a, b].
QuadRule gauss_legendre_on(int m, double a, double b);

// Fixed-panel Legendre integration of f over [a, b].
double integrate_panels(const std::function<double(double)>& f, double a,
                        double b, int panels, int nodes_per_panel);

} // namespace detproc
