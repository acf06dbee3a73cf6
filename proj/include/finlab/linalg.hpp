#pragma once

#include <vector>

#include "finlab/common.hpp"
#include "finlab/taylor.hpp"

namespace finlab {

/// Dense row-major n x n matrix of doubles, n <= 4.
struct SmallMatrix {
    int n = 0;
    std::vector<double> a;  // n*n, row major
    explicit SmallMatrix(int n_) : n(n_), a(n_ * n_, 0.0) {}
    double& operator()(int i, int j) { return a[i * n + j]; }
    double operator()(int i, int j) const { return a[i * n + j]; }
};

/// Cholesky factorization; returns false if the matrix is not positive
/// definite (within a tiny pivot tolerance).
bool cholesky(const SmallMatrix& m, SmallMatrix& lower);

/// Inverse of a symmetric positive-definite matrix via Cholesky.
/// Throws SingularError(part) if not SPD.
SmallMatrix spd_inverse(const SmallMatrix& m, const std::string& part);

/// Solve A z = rhs for a small matrix of Taylor scalars by Gaussian
/// elimination with partial pivoting on the constant terms. The constant-term
/// matrix must be invertible.
std::vector<TaylorScalar> taylor_solve(std::vector<std::vector<TaylorScalar>> A,
                                       std::vector<TaylorScalar> rhs, const std::string& part);

}  // namespace finlab
