#pragma once
// Dense Hermitian eigensolver: complex Householder reduction to tridiagonal
// form followed by implicit-shift QL on (d, |e|). Eigenvalues only; this is
// all the sampling pipelines need, and it keeps the solver self-contained.

#include <complex>
#include <stdexcept>
#include <vector>

namespace detproc {

struct EigenError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Reduce Hermitian A (row-major n x n, destroyed) to tridiagonal (d, e).
// Sub-diagonal phases are dropped: a Hermitian tridiagonal matrix is
// diagonally unitarily similar to the real one with |e_i| off-diagonals.
void hermitian_to_tridiagonal(std::vector<std::complex<double>>& a, int n,
                              std::vector<double>& d, std::vector<double>& e);

// Implicit-shift QL on a symmetric tridiagonal matrix; d returned sorted
// ascending. e is destroyed. Convergence: |e_m| <= 1e-14 (|d_m|+|d_m+1|),
// at most 50 sweeps per eigenvalue, EigenError past the cap.
void tridiagonal_ql(std::vector<double>& d, std::vector<double>& e);

// Full pipeline on a copy of the matrix.
std::vector<double> hermitian_eigenvalues(std::vector<std::complex<double>> a,
                                          int n);

} // namespace detproc
