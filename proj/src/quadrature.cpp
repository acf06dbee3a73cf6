#include "finlab/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>

namespace finlab {

double adaptive_integral(const std::function<double(double)>& f, double a, double b, double tol) {
    if (a == b) return 0.0;
    double error = 0.0;
    double value = boost::math::quadrature::gauss_kronrod<double, 15>::integrate(
        f, a, b, 15, tol, &error);
    if (!std::isfinite(value)) throw DomainError("quadrature produced a non-finite value");
    return value;
}

SphereRule circle_rule(int count, double offset) {
    SphereRule r;
    r.dirs.reserve(count);
    r.weights.assign(count, 2.0 * M_PI / count);
    for (int j = 0; j < count; ++j) {
        double th = offset + 2.0 * M_PI * j / count;
        r.dirs.push_back(Vec{std::cos(th), std::sin(th)});
    }
    return r;
}

namespace {

template <unsigned N>
void gauss_nodes(Vec& xs, Vec& ws) {
    using G = boost::math::quadrature::gauss<double, N>;
    const auto& half_x = G::abscissas();  // non-negative half
    const auto& half_w = G::weights();
    xs.clear();
    ws.clear();
    for (std::size_t i = 0; i < half_x.size(); ++i) {
        if (half_x[i] == 0.0) {
            xs.push_back(0.0);
            ws.push_back(half_w[i]);
        } else {
            xs.push_back(half_x[i]);
            ws.push_back(half_w[i]);
            xs.push_back(-half_x[i]);
            ws.push_back(half_w[i]);
        }
    }
}

}  // namespace

std::array<Vec, 3> frame_from_pole(const Vec& pole) {
    double norm = std::sqrt(pole[0] * pole[0] + pole[1] * pole[1] + pole[2] * pole[2]);
    if (norm < 1e-14) {
        return {Vec{1, 0, 0}, Vec{0, 1, 0}, Vec{0, 0, 1}};
    }
    Vec p{pole[0] / norm, pole[1] / norm, pole[2] / norm};
    // axis least aligned with p
    int least = 0;
    for (int i = 1; i < 3; ++i)
        if (std::fabs(p[i]) < std::fabs(p[least])) least = i;
    Vec e(3, 0.0);
    e[least] = 1.0;
    // u = normalize(p x e), v = p x u
    Vec u{p[1] * e[2] - p[2] * e[1], p[2] * e[0] - p[0] * e[2], p[0] * e[1] - p[1] * e[0]};
    double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
    for (double& c : u) c /= un;
    Vec v{p[1] * u[2] - p[2] * u[1], p[2] * u[0] - p[0] * u[2], p[0] * u[1] - p[1] * u[0]};
    return {u, v, p};
}

SphereRule sphere_rule_s2(int n_theta, int n_phi, const std::array<Vec, 3>& frame) {
    Vec xs, ws;
    switch (n_theta) {
        case 16: gauss_nodes<16>(xs, ws); break;
        case 32: gauss_nodes<32>(xs, ws); break;
        case 64: gauss_nodes<64>(xs, ws); break;
        case 128: gauss_nodes<128>(xs, ws); break;
        case 256: gauss_nodes<256>(xs, ws); break;
        default: throw PreconditionError("n_theta must be 16, 32, 64, 128 or 256");
    }
    SphereRule r;
    r.dirs.reserve(xs.size() * n_phi);
    r.weights.reserve(xs.size() * n_phi);
    const double wphi = 2.0 * M_PI / n_phi;
    for (std::size_t it = 0; it < xs.size(); ++it) {
        double c = xs[it];  // cos(theta)
        double s = std::sqrt(std::max(0.0, 1.0 - c * c));
        for (int ip = 0; ip < n_phi; ++ip) {
            double phi = wphi * ip;
            double a = s * std::cos(phi), b = s * std::sin(phi);
            Vec d(3);
            for (int k = 0; k < 3; ++k)
                d[k] = a * frame[0][k] + b * frame[1][k] + c * frame[2][k];
            r.dirs.push_back(std::move(d));
            r.weights.push_back(ws[it] * wphi);
        }
    }
    return r;
}

double unit_ball_volume(int n) {
    return std::pow(M_PI, n / 2.0) / std::tgamma(n / 2.0 + 1.0);
}

}  // namespace finlab
