#pragma once
// Orthogonal polynomial families behind the correlation kernels.
//
// Conventions, fixed here once:
//  * HermiteStandard: weight e^{-y^2}. eval_orthonormal returns the
//    orthonormalized standard Hermite polynomials H_k / sqrt(sqrt(pi) 2^k k!).
//  * HermiteScaledGUE(N): weight e^{-x^2/2N}. eval_orthonormal returns
//    q_k(x) = (2 pi N)^{-1/4} (2^k k!)^{-1/2} H_k(x / sqrt(2N)), the family
//    whose leading coefficients are u_k = (2 pi N)^{-1/4} k!^{-1/2} N^{-k/2}.
//  * Charlier(t): weight w(x) = e^{-t} t^x / x! on {0,1,...}. eval_orthonormal
//    returns C_k(x,t) in the hypergeometric normalization, which is NOT
//    orthonormal: <C_n, C_m>_w = n!/t^n delta_{nm}. The orthonormalized
//    member (-1)^k t^{k/2} (k!)^{-1/2} C_k is what leading_coeff,
//    recurrence_coeffs and christoffel_darboux refer to.
//
// Weighted evaluation carries sqrt(weight) through the recurrence so values
// stay O(1); raw H_k at the degrees used here would overflow long before the
// kernels do.

#include <stdexcept>
#include <vector>

namespace detproc {

enum class PolyKind { HermiteStandard, HermiteScaledGUE, Charlier };

struct PolyFamily {
    PolyKind kind;
    double param;   // N (matrix size) for HermiteScaledGUE, t > 0 for Charlier
    int max_degree; // highest degree the family is certified for

    PolyFamily(PolyKind k, double p, int maxdeg);
};

struct RecurrenceCoeffs {
    // q_n = (A_n x + B_n) q_{n-1} - C_n q_{n-2}, indexed so that A[n-1] is A_n.
    std::vector<double> A, B, C;
};

struct TailBoundError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raw standard Hermite polynomial H_k(y) = 2^k y^k + ..., forward recurrence.
// k above 200 is rejected: the values overflow silently past that range.
double eval_hermite_standard(int k, double y);

// Charlier polynomial C_n(x,t) = 2F0(-n, -x;; -1/t), three-term recurrence.
double charlier(int n, double x, double t);

double weight(const PolyFamily& f, double x);

// Leading coefficient u_k of the orthonormalized family member.
double leading_coeff(const PolyFamily& f, int k);

// Family member in the documented per-kind normalization (see header).
double eval_orthonormal(const PolyFamily& f, int k, double x);

// Orthonormalized member q_k regardless of kind.
double eval_q(const PolyFamily& f, int k, double x);

// psi_k(x) = sqrt(w(x)) q_k(x).
double eval_weighted(const PolyFamily& f, int k, double x);

// A_n, C_n from the u_k ratios; B_n integrated numerically from
// -A_n <x q_{n-1}, q_{n-1}>.
RecurrenceCoeffs recurrence_coeffs(const PolyFamily& f);

// Christoffel-Darboux ratio form of sum_{k<N} q_k(x) q_k(y); the confluent
// x = y branch uses the derivative form.
double christoffel_darboux(const PolyFamily& f, int n, double x, double y);

// sqrt(w(x)) sqrt(w(y)) * christoffel_darboux, evaluated on weighted values.
double christoffel_darboux_weighted(const PolyFamily& f, int n, double x,
                                    double y);

// <p_i, p_j>_w in the family's own normalization: orthonormal q's for the
// Hermite kinds, hypergeometric C's for Charlier. Gauss-Hermite quadrature
// for the continuous weights, certified truncated lattice sum for Charlier.
double inner_product(const PolyFamily& f, int i, int j);

// <x q_{n-1}, q_{n-1}>_w, used for the numeric B_n.
double first_moment_q(const PolyFamily& f, int n);

} // namespace detproc
