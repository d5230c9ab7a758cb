#pragma once
// Generic finite-rank determinantal machinery: kernels as paired function
// lists, n-point correlation determinants, biorthogonalization of a
// non-orthogonal pair of families, and gap probabilities through the
// finite-rank determinant with the Fredholm series kept as a cross-check.

#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "detproc/linalg.hpp"

namespace detproc {

enum class Space { Continuum, Lattice };

struct KernelError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A point of an extended process; level is 0 for single-level kernels.
struct KernelPoint {
    int level = 0;
    double x = 0.0;
};

// K(n1,x1; n2,x2) = -shift(n1,n2,x1,x2) [n1<n2]
//                   + sum_{k=1..limit} psi[k-1](n1,x1) phi[k-1](n2,x2)
// with limit = min(rank, n2) for leveled kernels and rank otherwise.
struct FiniteRankKernel {
    int rank = 0;
    Space space = Space::Continuum;
    bool leveled = false;
    std::vector<std::function<double(int, double)>> psi, phi;
    std::function<double(int, int, double, double)> shift; // optional
    double tail_scale = 8.0; // half-width where the weighted mass lives

    double eval(double x, double y) const { return eval(0, x, 0, y); }
    double eval(int n1, double x1, int n2, double x2) const;
};

// det[K(p_i, p_j)]. Exactly zero when more points than rank and no shift
// term is present (rank deficiency, before any roundoff).
double correlation_det(const FiniteRankKernel& k,
                       const std::vector<KernelPoint>& pts);
double correlation_det(const FiniteRankKernel& k, const std::vector<double>& xs);

// Inner product engine used by biorthogonalize: computes <f, g>_w.
using ScalarFn = std::function<double(double)>;
using InnerProductFn = std::function<double(const ScalarFn&, const ScalarFn&)>;

// Gauss-Hermite based inner product for weight e^{-x^2 / (2N)} (the GUE
// weight); nodes scaled so integrands of the form w * polynomial are exact.
InnerProductFn gue_weight_inner_product(double matrix_size, int nodes);

struct BiorthogonalizeResult {
    FiniteRankKernel kernel;
    double condition = 1.0;
};

// Kernel of the determinantal process with measure
// det[phi_i(x_j)] det[psi_i(x_j)] prod w(x_i) dx_i, referred to Lebesgue:
// K(x,y) = sqrt(w(x)) sqrt(w(y)) sum psi_i(x) [A^-1]_ij phi_j(y),
// A_ij = <phi_i, psi_j>_w. Gram matrices with condition > 1e12 are rejected.
BiorthogonalizeResult biorthogonalize(const std::vector<ScalarFn>& phi,
                                      const std::vector<ScalarFn>& psi,
                                      const ScalarFn& sqrt_weight,
                                      const InnerProductFn& inner);

// Finite unions of intervals (continuum) or integer ranges (lattice).
// Open ends are clipped against the kernel's tail_scale at evaluation time.
struct Interval {
    double a, b; // a < b; +-infinity allowed
};

struct Region {
    std::vector<Interval> parts;
    static Region empty() { return {}; }
    static Region of(std::vector<Interval> parts);
    bool is_empty() const { return parts.empty(); }
};

struct GapProblem {
    FiniteRankKernel kernel;
    Region region;
};

struct GapResult {
    double value = 1.0;
    double tail_bound = 0.0; // certified bound on truncated weight mass
};

// det(I - G), G_jk = integral_B psi_j phi_k (projection-kernel identity).
GapResult gap_probability(const GapProblem& g);

// Partial sums of the Fredholm series sum (-1)^n/n! int_{B^n} det[K];
// n_max <= 6 (combinatorial guard), quadrature dimension n_max <= 4.
std::vector<double> fredholm_series(const GapProblem& g, int n_max);

} // namespace detproc
