#pragma once
// Small dense linear algebra: LU with partial pivoting, determinants,
// inverses and 1-norm condition numbers. Sizes here are tiny (rank of a
// finite kernel, a lattice window), so no blocking, no external library.

#include <complex>
#include <stdexcept>
#include <vector>

namespace detproc {

// Row-major square matrix of doubles.
struct Matrix {
    int n = 0;
    std::vector<double> a;
    Matrix() = default;
    explicit Matrix(int n_) : n(n_), a(std::size_t(n_) * n_, 0.0) {}
    double& operator()(int i, int j) { return a[std::size_t(i) * n + j]; }
    double operator()(int i, int j) const { return a[std::size_t(i) * n + j]; }
};

// det(A) by LU with partial pivoting; A passed by value.
double lu_det(Matrix m);

// Long-double variant used where Gram matrices get ill-conditioned.
long double lu_det_ld(const Matrix& m);

// Inverse by Gauss-Jordan with partial pivoting (long double accumulation).
// Throws std::runtime_error on (numerically) singular input.
Matrix lu_inverse(const Matrix& m);

double norm1(const Matrix& m);

// kappa_1(A) = ||A||_1 ||A^-1||_1 computed from the explicit inverse.
double condition_number(const Matrix& m);

// Solve (A - shift I) v = b for complex Hermitian-ish A, used by the
// inverse-iteration helpers in tests. A row-major n x n.
std::vector<std::complex<double>>
solve_complex(std::vector<std::complex<double>> a, int n,
              std::vector<std::complex<double>> b);

} // namespace detproc
