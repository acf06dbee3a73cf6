#pragma once

#include <vector>

#include "finlab/common.hpp"

namespace finlab {

/// Truncated univariate Taylor series around a base point: value plus
/// normalized coefficients c[k] = f^(k)/k! of the local expansion. Used by
/// the phi families, where everything is a function of s alone.
class Series1 {
  public:
    Series1() = default;
    explicit Series1(int order, double constant = 0.0) : c_(order + 1, 0.0) { c_[0] = constant; }
    explicit Series1(std::vector<double> coeffs) : c_(std::move(coeffs)) {}

    static Series1 variable(int order, double value);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    double value() const { return c_[0]; }
    double coeff(int k) const { return c_[k]; }
    double& coeff(int k) { return c_[k]; }
    /// k-th derivative (not normalized).
    double deriv(int k) const;
    const std::vector<double>& coeffs() const { return c_; }

    Series1 operator-() const;
    friend Series1 operator+(const Series1& a, const Series1& b);
    friend Series1 operator-(const Series1& a, const Series1& b);
    friend Series1 operator*(const Series1& a, const Series1& b);
    friend Series1 operator/(const Series1& a, const Series1& b);
    friend Series1 operator+(Series1 a, double b) { a.c_[0] += b; return a; }
    friend Series1 operator+(double b, Series1 a) { a.c_[0] += b; return a; }
    friend Series1 operator-(Series1 a, double b) { a.c_[0] -= b; return a; }
    friend Series1 operator-(double b, const Series1& a) { return -a + b; }
    friend Series1 operator*(Series1 a, double b);
    friend Series1 operator*(double b, Series1 a) { return std::move(a) * b; }
    friend Series1 operator/(Series1 a, double b) { return std::move(a) * (1.0 / b); }
    friend Series1 operator/(double b, const Series1& a);

    /// f(this) with d[k] = f^(k)(value())/k!, k = 0..order().
    Series1 compose(const std::vector<double>& d) const;

    /// Antiderivative vanishing at the base point; one order longer.
    Series1 antiderivative() const;

    /// Derivative series; one order shorter.
    Series1 derivative() const;

    /// Evaluate the truncated polynomial at offset h from the base point.
    double eval(double h) const;

  private:
    std::vector<double> c_;
};

Series1 exp(const Series1& u);
Series1 log(const Series1& u);
Series1 sqrt(const Series1& u);
Series1 sin(const Series1& u);
Series1 cos(const Series1& u);
Series1 pow(const Series1& u, double p);
Series1 pow(const Series1& u, int p);

}  // namespace finlab
