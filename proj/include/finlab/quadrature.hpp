#pragma once

#include <array>
#include <functional>
#include <vector>

#include "finlab/common.hpp"

namespace finlab {

/// Adaptive Gauss-Kronrod integral of f over [a, b] to absolute/relative
/// tolerance `tol`.
double adaptive_integral(const std::function<double(double)>& f, double a, double b, double tol);

/// A quadrature rule on the Euclidean unit sphere S^{n-1}:
/// sum_i w_i f(dir_i) approximates the surface integral of f.
struct SphereRule {
    std::vector<Vec> dirs;
    Vec weights;
};

/// Equally spaced angles on the circle (periodic trapezoid; spectrally
/// accurate for smooth integrands), rotated by `offset` radians.
SphereRule circle_rule(int count, double offset);

/// Product Gauss-Legendre (in cos theta) x trapezoid (in phi) rule on S^2.
/// The polar axis is frame[2]; frame must be a right-handed orthonormal
/// triad. n_theta must be one of 16, 32, 64, 128, 256.
SphereRule sphere_rule_s2(int n_theta, int n_phi, const std::array<Vec, 3>& frame);

/// Deterministic right-handed orthonormal triad with the given pole as the
/// third axis (pole need not be normalized).
std::array<Vec, 3> frame_from_pole(const Vec& pole);

/// Volume of the Euclidean unit ball in R^n.
double unit_ball_volume(int n);

}  // namespace finlab
