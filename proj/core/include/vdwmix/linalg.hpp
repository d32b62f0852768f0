#pragma once

#include <span>
#include <vector>

namespace vdwmix {

/// Eigenvalues of a symmetric matrix (row-major n*n), ascending.
/// Closed form for n <= 2, cyclic Jacobi rotations otherwise
/// (off-diagonal Frobenius norm < 1e-13 stopping).
std::vector<double> symmetric_eigenvalues(std::span<const double> m, int n);

double symmetric_min_eigenvalue(std::span<const double> m, int n);
double symmetric_max_eigenvalue(std::span<const double> m, int n);

/// In-place LU factorization with partial pivoting of a dense n*n matrix.
/// Returns false on (numerical) singularity.
bool lu_factor(std::span<double> m, std::span<int> piv, int n);

/// Solves the factored system for one right-hand side in place.
void lu_solve(std::span<const double> lu, std::span<const int> piv, int n, std::span<double> rhs);

/// Block-tridiagonal solver for systems with m row blocks of size n:
///   lower[k] x_{k-1} + diag[k] x_k + upper[k] x_{k+1} = rhs_k.
/// Blocks are stored consecutively (k*n*n offsets), rhs point-major (k*n).
/// Factorization overwrites diag/upper/rhs; solution lands in rhs.
/// Returns false if a pivot block is singular.
bool block_tridiagonal_solve(std::span<double> lower, std::span<double> diag,
                             std::span<double> upper, std::span<double> rhs, int m, int n);

}  // namespace vdwmix
