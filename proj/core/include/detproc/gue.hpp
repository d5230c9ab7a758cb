#pragma once
// GUE sampling and spectra. Scale convention throughout: the matrix measure
// has density exp(-Tr(H^2)/4N) (entry variances H_ii ~ N(0,N),
// Re/Im H_ij ~ N(0,N/2)), so the weight is e^{-x^2/2N}, eigenvalue density
// stays O(1) and the largest eigenvalue sits near 2N. Other scalings are a
// rescaling of the spectrum by a constant; see rescale_spectrum.

#include <complex>
#include <vector>

#include "detproc/detpp.hpp"
#include "detproc/rng.hpp"

namespace detproc {
namespace gue {

struct HermitianMatrix {
    int n = 0;
    std::vector<std::complex<double>> a; // row-major n x n

    explicit HermitianMatrix(int n_) : n(n_), a(std::size_t(n_) * n_) {}
    std::complex<double>& at(int i, int j) { return a[std::size_t(i) * n + j]; }
    const std::complex<double>& at(int i, int j) const {
        return a[std::size_t(i) * n + j];
    }
    double trace_real() const;
    bool is_hermitian() const; // exact storage-level check
};

struct Spectrum {
    std::vector<double> values; // ascending
};

// Triangular array of minor spectra, levels[m-1] = eigenvalues of the m x m
// leading principal minor.
struct MinorArray {
    int n = 0;
    std::vector<std::vector<double>> levels;
};

HermitianMatrix sample_gue(int n, Rng& rng);

Spectrum eigenvalues(const HermitianMatrix& h);

// Spectra of all leading principal minors; throws if Cauchy interlacing
// fails beyond 1e-12 ties (it cannot, short of solver failure).
MinorArray minor_eigenvalues(const HermitianMatrix& h);

// Map a spectrum from the a = 1/2N convention to a' (e.g. a' = 1 divides by
// sqrt(2N), a' = N by N sqrt(2)).
std::vector<double> rescale_spectrum(const std::vector<double>& values,
                                     double n, double a_target);

// K_N(x,y) = sqrt(w(x) w(y)) sum_{k<N} q_k(x) q_k(y), Christoffel-Darboux form.
double gue_kernel(int n, double x, double y);

// (1/pi) sqrt(1 - (mu/2)^2) on [-2,2], 0 outside.
double semicircle_density(double mu);

// P(lambda_max <= s) as the gap probability of (s, infinity); n <= 30.
double largest_eigenvalue_cdf(int n, double s);

// The rank-n GUE kernel as a finite-rank object for the generic machinery.
FiniteRankKernel finite_rank_kernel(int n);

// --- minors process -----------------------------------------------------

// Psi^n_m(x) = (-1)^m (2N)^{-m/2} e^{-x^2/2N} H_m(x/sqrt(2N)) and the
// partner family Phi^n_m normalized so that integral Phi_i Psi_j = delta_ij.
double minors_psi(int matrix_size, int m, double x);
double minors_phi(int matrix_size, int m, double x);

// One-sided heat-type shift (x2-x1)^{d-1}/(d-1)! 1[x2 >= x1] for d = n2-n1.
double minors_shift(int n1, int n2, double x1, double x2);

// Extended minors kernel, Prop.-4 form.
double minors_kernel(int matrix_size, int n1, double x1, int n2, double x2);

FiniteRankKernel minors_finite_rank_kernel(int matrix_size);

// Weak interlacing check with tie tolerance.
bool interlaces(const std::vector<double>& upper, const std::vector<double>& lower,
                double tol = 1e-12);

} // namespace gue
} // namespace detproc
