#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <vector>

#include "finlab/common.hpp"
#include "finlab/multiindex.hpp"

namespace finlab {

namespace detail {

/// One variable group (the x's or the y's) of a jet space: all multi-indices
/// of `nvars` variables with total order <= cap, in graded lexicographic
/// order, plus the tables that make truncated convolution and index lookup
/// cheap.
struct GroupTable {
    int nvars = 0;
    int cap = 0;
    std::vector<std::vector<int>> exps;   // rank -> exponents
    std::vector<double> factorial;        // rank -> product of exponent factorials
    std::vector<int> degree;              // rank -> total order
    std::vector<int32_t> rank_of_code;    // mixed-radix code -> rank, -1 if out of cap
    // (i, j, k) with exps[i] + exps[j] = exps[k]; every in-cap pair appears once
    struct Triple {
        uint32_t i, j, k;
    };
    std::vector<Triple> triples;

    void build(int nvars_, int cap_);
    int code(const std::vector<int>& e) const;
    int rank(const std::vector<int>& e) const;  // -1 if out of cap
};

}  // namespace detail

/// Shape of a truncated multivariate Taylor expansion in the 2n variables
/// (x^1..x^n, y^1..y^n), with independent total-order caps for the x-group
/// and the y-group. Instances are immutable and cached; every TaylorScalar
/// holds a pointer to its space, and binary operations require both operands
/// to live in the same space.
class JetSpace {
  public:
    static std::shared_ptr<const JetSpace> get(int nx, int ny, int capx, int capy);

    int nx() const { return x_.nvars; }
    int ny() const { return y_.nvars; }
    int capx() const { return x_.cap; }
    int capy() const { return y_.cap; }
    int size() const { return static_cast<int>(x_.exps.size() * y_.exps.size()); }

    const detail::GroupTable& xg() const { return x_; }
    const detail::GroupTable& yg() const { return y_; }

    /// Flat coefficient index of the multi-index split (kx | ky); -1 if out of cap.
    int flat(const std::vector<int>& kx, const std::vector<int>& ky) const;

  private:
    detail::GroupTable x_, y_;
    JetSpace() = default;
};

using JetSpacePtr = std::shared_ptr<const JetSpace>;

/// A scalar value carrying its truncated Taylor expansion around the
/// evaluation point. Coefficients are stored normalized (divided by the
/// multi-index factorial) so multiplication is plain truncated convolution.
///
/// `valid_x()`/`valid_y()` are the per-group derivative orders guaranteed
/// correct: they start at the space caps for freshly seeded variables and
/// shrink when `shift` consumes orders. Extraction asserts validity.
class TaylorScalar {
  public:
    TaylorScalar() = default;
    TaylorScalar(JetSpacePtr sp, double constant);

    /// Seed for the variable with flat index v (x-group: 0..nx-1,
    /// y-group: nx..nx+ny-1): value + first-order perturbation.
    static TaylorScalar variable(JetSpacePtr sp, int v, double value);
    static TaylorScalar constant(JetSpacePtr sp, double value) { return TaylorScalar(sp, value); }

    const JetSpacePtr& space() const { return sp_; }
    int valid_x() const { return validx_; }
    int valid_y() const { return validy_; }
    double value() const { return c_.empty() ? 0.0 : c_[0]; }

    /// The mixed partial derivative for exponents (kx | ky), not normalized.
    double deriv(const std::vector<int>& kx, const std::vector<int>& ky) const;

    /// The Taylor expansion of the derivative field d^(kx,ky) f, valid to
    /// (valid_x - |kx|, valid_y - |ky|).
    TaylorScalar shift(const std::vector<int>& kx, const std::vector<int>& ky) const;

    /// Clamp the validity metadata (never raises it).
    TaylorScalar& restrict_valid(int vx, int vy);

    TaylorScalar operator-() const;
    TaylorScalar& operator+=(const TaylorScalar& o);
    TaylorScalar& operator-=(const TaylorScalar& o);
    TaylorScalar& operator+=(double a);
    TaylorScalar& operator-=(double a);
    TaylorScalar& operator*=(double a);

    friend TaylorScalar operator+(TaylorScalar a, const TaylorScalar& b) { return a += b; }
    friend TaylorScalar operator-(TaylorScalar a, const TaylorScalar& b) { return a -= b; }
    friend TaylorScalar operator+(TaylorScalar a, double b) { return a += b; }
    friend TaylorScalar operator+(double a, TaylorScalar b) { return b += a; }
    friend TaylorScalar operator-(TaylorScalar a, double b) { return a -= b; }
    friend TaylorScalar operator-(double a, const TaylorScalar& b) { return -b + a; }
    friend TaylorScalar operator*(const TaylorScalar& a, const TaylorScalar& b) { return mul(a, b); }
    friend TaylorScalar operator*(TaylorScalar a, double b) { return a *= b; }
    friend TaylorScalar operator*(double a, TaylorScalar b) { return b *= a; }
    friend TaylorScalar operator/(const TaylorScalar& a, const TaylorScalar& b);
    friend TaylorScalar operator/(TaylorScalar a, double b) { return a *= (1.0 / b); }
    friend TaylorScalar operator/(double a, const TaylorScalar& b);

    static TaylorScalar mul(const TaylorScalar& a, const TaylorScalar& b);

    /// f(this) where d[k] = f^(k)(value())/k! for k = 0..K, K = capx+capy.
    TaylorScalar compose(const std::vector<double>& d) const;

    const std::vector<double>& coeffs() const { return c_; }

  private:
    JetSpacePtr sp_;
    std::vector<double> c_;
    int validx_ = 0, validy_ = 0;
    void check_same(const TaylorScalar& o) const;
};

// Elementary functions. Domain violations throw DomainError naming the value.
TaylorScalar exp(const TaylorScalar& u);
TaylorScalar log(const TaylorScalar& u);
TaylorScalar sqrt(const TaylorScalar& u);
TaylorScalar sin(const TaylorScalar& u);
TaylorScalar cos(const TaylorScalar& u);
TaylorScalar abs(const TaylorScalar& u);
TaylorScalar pow(const TaylorScalar& u, int p);
TaylorScalar pow(const TaylorScalar& u, double p);

}  // namespace finlab
