#include "finlab/detail/univariate.hpp"

#include <cmath>

#include "finlab/common.hpp"

namespace finlab::detail {

std::vector<double> uni_exp(double t0, int order) {
    std::vector<double> d(order + 1);
    d[0] = std::exp(t0);
    for (int k = 1; k <= order; ++k) d[k] = d[k - 1] / k;
    return d;
}

std::vector<double> uni_log(double t0, int order) {
    if (t0 <= 0.0) throw DomainError("log of non-positive value " + fmt17(t0));
    std::vector<double> d(order + 1);
    d[0] = std::log(t0);
    double tp = 1.0;  // t0^k
    for (int k = 1; k <= order; ++k) {
        tp *= t0;
        d[k] = ((k % 2) ? 1.0 : -1.0) / (k * tp);
    }
    return d;
}

std::vector<double> uni_pow(double t0, double p, int order) {
    if (t0 <= 0.0) throw DomainError("pow with non-integer exponent needs a positive base, got " + fmt17(t0));
    std::vector<double> d(order + 1);
    d[0] = std::pow(t0, p);
    // d[k] = binom(p, k) t0^(p-k)
    double coeff = d[0];
    for (int k = 1; k <= order; ++k) {
        coeff *= (p - (k - 1)) / (k * t0);
        d[k] = coeff;
    }
    return d;
}

std::vector<double> uni_sqrt(double t0, int order) {
    if (t0 <= 0.0) {
        if (t0 == 0.0 && order == 0) return {0.0};
        throw DomainError("sqrt of non-positive value " + fmt17(t0));
    }
    return uni_pow(t0, 0.5, order);
}

std::vector<double> uni_sin(double t0, int order) {
    std::vector<double> d(order + 1);
    double fact = 1.0;
    const double table[4] = {std::sin(t0), std::cos(t0), -std::sin(t0), -std::cos(t0)};
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        d[k] = table[k % 4] / fact;
    }
    return d;
}

std::vector<double> uni_cos(double t0, int order) {
    std::vector<double> d(order + 1);
    double fact = 1.0;
    const double table[4] = {std::cos(t0), -std::sin(t0), -std::cos(t0), std::sin(t0)};
    for (int k = 0; k <= order; ++k) {
        if (k > 0) fact *= k;
        d[k] = table[k % 4] / fact;
    }
    return d;
}

std::vector<double> uni_recip(double t0, int order) {
    if (t0 == 0.0) throw DomainError("division by zero");
    std::vector<double> d(order + 1);
    d[0] = 1.0 / t0;
    for (int k = 1; k <= order; ++k) d[k] = -d[k - 1] / t0;
    return d;
}

std::vector<double> uni_abs(double t0, int order) {
    if (t0 == 0.0 && order >= 1)
        throw DomainError("abs is not differentiable at 0");
    std::vector<double> d(order + 1, 0.0);
    d[0] = std::fabs(t0);
    if (order >= 1) d[1] = (t0 > 0.0) ? 1.0 : -1.0;
    return d;
}

}  // namespace finlab::detail
