#pragma once

#include <string>
#include <vector>

namespace finlab::detail {

// Normalized Taylor coefficients d[k] = f^(k)(t0)/k!, k = 0..order, of the
// named elementary function at t0. Throws DomainError when t0 is outside the
// function's smooth domain (for order >= 1 the boundary itself is excluded).
std::vector<double> uni_exp(double t0, int order);
std::vector<double> uni_log(double t0, int order);
std::vector<double> uni_sqrt(double t0, int order);
std::vector<double> uni_sin(double t0, int order);
std::vector<double> uni_cos(double t0, int order);
std::vector<double> uni_recip(double t0, int order);
std::vector<double> uni_pow(double t0, double p, int order);
std::vector<double> uni_abs(double t0, int order);

}  // namespace finlab::detail
