#include "finlab/linalg.hpp"

#include <cmath>

namespace finlab {

bool cholesky(const SmallMatrix& m, SmallMatrix& lower) {
    const int n = m.n;
    lower = SmallMatrix(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j <= i; ++j) {
            double s = m(i, j);
            for (int k = 0; k < j; ++k) s -= lower(i, k) * lower(j, k);
            if (i == j) {
                if (s <= 0.0) return false;
                lower(i, i) = std::sqrt(s);
            } else {
                lower(i, j) = s / lower(j, j);
            }
        }
    }
    return true;
}

SmallMatrix spd_inverse(const SmallMatrix& m, const std::string& part) {
    const int n = m.n;
    SmallMatrix L(n);
    if (!cholesky(m, L)) throw SingularError(part, "matrix is not positive definite");
    // solve L L^T X = I column by column
    SmallMatrix inv(n);
    std::vector<double> z(n);
    for (int col = 0; col < n; ++col) {
        for (int i = 0; i < n; ++i) {
            double s = (i == col) ? 1.0 : 0.0;
            for (int k = 0; k < i; ++k) s -= L(i, k) * z[k];
            z[i] = s / L(i, i);
        }
        for (int i = n - 1; i >= 0; --i) {
            double s = z[i];
            for (int k = i + 1; k < n; ++k) s -= L(k, i) * inv(k, col);
            inv(i, col) = s / L(i, i);
        }
    }
    return inv;
}

std::vector<TaylorScalar> taylor_solve(std::vector<std::vector<TaylorScalar>> A,
                                       std::vector<TaylorScalar> rhs, const std::string& part) {
    const int n = static_cast<int>(rhs.size());
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::fabs(A[r][col].value()) > std::fabs(A[piv][col].value())) piv = r;
        if (std::fabs(A[piv][col].value()) < 1e-300)
            throw SingularError(part, "singular matrix in Taylor solve");
        std::swap(A[piv], A[col]);
        std::swap(rhs[piv], rhs[col]);
        for (int r = col + 1; r < n; ++r) {
            TaylorScalar factor = A[r][col] / A[col][col];
            for (int c = col + 1; c < n; ++c) A[r][c] -= factor * A[col][c];
            rhs[r] -= factor * rhs[col];
        }
    }
    std::vector<TaylorScalar> z(rhs);
    for (int i = n - 1; i >= 0; --i) {
        TaylorScalar s = rhs[i];
        for (int k = i + 1; k < n; ++k) s -= A[i][k] * z[k];
        z[i] = s / A[i][i];
    }
    return z;
}

}  // namespace finlab
