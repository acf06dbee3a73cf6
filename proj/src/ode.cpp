#include "finlab/ode.hpp"

#include <algorithm>
#include <cmath>

namespace finlab {

namespace {

// Dormand-Prince 5(4) tableau
const double A21 = 1.0 / 5;
const double A31 = 3.0 / 40, A32 = 9.0 / 40;
const double A41 = 44.0 / 45, A42 = -56.0 / 15, A43 = 32.0 / 9;
const double A51 = 19372.0 / 6561, A52 = -25360.0 / 2187, A53 = 64448.0 / 6561,
             A54 = -212.0 / 729;
const double A61 = 9017.0 / 3168, A62 = -355.0 / 33, A63 = 46732.0 / 5247, A64 = 49.0 / 176,
             A65 = -5103.0 / 18656;
const double B1 = 35.0 / 384, B3 = 500.0 / 1113, B4 = 125.0 / 192, B5 = -2187.0 / 6784,
             B6 = 11.0 / 84;
const double E1 = B1 - 5179.0 / 57600, E3 = B3 - 7571.0 / 16695, E4 = B4 - 393.0 / 640,
             E5 = B5 + 92097.0 / 339200, E6 = B6 - 187.0 / 2100, E7 = -1.0 / 40;

}  // namespace

std::size_t OdeSolution::segment(double tq) const {
    // nodes are monotone in integration direction
    bool forward = t.back() >= t.front();
    auto cmp = [forward](double a, double b) { return forward ? a < b : a > b; };
    std::size_t lo = 0, hi = t.size() - 1;
    if (!cmp(t[0], tq)) return 0;
    if (!cmp(tq, t[hi])) return hi - 1;
    while (hi - lo > 1) {
        std::size_t mid = (lo + hi) / 2;
        if (cmp(t[mid], tq))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

Vec OdeSolution::eval(double tq) const {
    std::size_t s = segment(tq);
    double h = t[s + 1] - t[s];
    double th = (tq - t[s]) / h;
    th = std::clamp(th, 0.0, 1.0);
    double h00 = (1 + 2 * th) * (1 - th) * (1 - th);
    double h10 = th * (1 - th) * (1 - th);
    double h01 = th * th * (3 - 2 * th);
    double h11 = th * th * (th - 1);
    Vec out(u[s].size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = h00 * u[s][i] + h10 * h * f[s][i] + h01 * u[s + 1][i] + h11 * h * f[s + 1][i];
    return out;
}

Vec OdeSolution::eval_derivative(double tq) const {
    std::size_t s = segment(tq);
    double h = t[s + 1] - t[s];
    double th = std::clamp((tq - t[s]) / h, 0.0, 1.0);
    double d00 = 6 * th * (th - 1) / h;
    double d10 = (1 - th) * (1 - 3 * th);
    double d01 = -d00;
    double d11 = th * (3 * th - 2);
    Vec out(u[s].size());
    for (std::size_t i = 0; i < out.size(); ++i)
        out[i] = d00 * u[s][i] + d10 * f[s][i] + d01 * u[s + 1][i] + d11 * f[s + 1][i];
    return out;
}

OdeSolution integrate_dopri5(const OdeRhs& rhs, double t0, double t1, Vec u0,
                             const OdeOptions& opts, const OdeStop& stop) {
    const int n = static_cast<int>(u0.size());
    const double dir = (t1 >= t0) ? 1.0 : -1.0;
    const double span = std::fabs(t1 - t0);

    OdeSolution sol;
    double t = t0;
    Vec u = std::move(u0);
    Vec k1(n), k2(n), k3(n), k4(n), k5(n), k6(n), k7(n), utmp(n), unew(n);
    rhs(t, u, k1);

    sol.t.push_back(t);
    sol.u.push_back(u);
    sol.f.push_back(k1);

    double h = span / 100.0;
    if (opts.max_step > 0.0) h = std::min(h, opts.max_step);

    long steps = 0;
    while (dir * (t1 - t) > 0.0) {
        if (++steps > opts.max_steps) {
            sol.truncated = true;
            sol.warning = "step budget exhausted at t = " + fmt17(t);
            break;
        }
        h = std::min(h, std::fabs(t1 - t));
        if (opts.max_step > 0.0) h = std::min(h, opts.max_step);
        if (h < 1e-14 * std::max(1.0, std::fabs(t))) {
            sol.truncated = true;
            sol.warning = "step size underflow at t = " + fmt17(t);
            break;
        }
        double hs = dir * h;

        auto stage = [&](Vec& out, std::initializer_list<std::pair<const Vec*, double>> terms) {
            for (int i = 0; i < n; ++i) {
                double acc = u[i];
                for (const auto& [kv, c] : terms) acc += hs * c * (*kv)[i];
                out[i] = acc;
            }
        };

        bool ok = true;
        try {
            stage(utmp, {{&k1, A21}});
            rhs(t + hs / 5, utmp, k2);
            stage(utmp, {{&k1, A31}, {&k2, A32}});
            rhs(t + 3 * hs / 10, utmp, k3);
            stage(utmp, {{&k1, A41}, {&k2, A42}, {&k3, A43}});
            rhs(t + 4 * hs / 5, utmp, k4);
            stage(utmp, {{&k1, A51}, {&k2, A52}, {&k3, A53}, {&k4, A54}});
            rhs(t + 8 * hs / 9, utmp, k5);
            stage(utmp, {{&k1, A61}, {&k2, A62}, {&k3, A63}, {&k4, A64}, {&k5, A65}});
            rhs(t + hs, utmp, k6);
            stage(unew, {{&k1, B1}, {&k3, B3}, {&k4, B4}, {&k5, B5}, {&k6, B6}});
            rhs(t + hs, unew, k7);
        } catch (const Error&) {
            ok = false;  // stepped outside the domain; retry smaller
        }

        double err = 0.0;
        if (ok) {
            for (int i = 0; i < n; ++i) {
                double e = hs * (E1 * k1[i] + E3 * k3[i] + E4 * k4[i] + E5 * k5[i] +
                                 E6 * k6[i] + E7 * k7[i]);
                double sc = opts.atol + opts.rtol * std::max(std::fabs(u[i]), std::fabs(unew[i]));
                err += (e / sc) * (e / sc);
            }
            err = std::sqrt(err / n);
            if (!std::isfinite(err)) ok = false;
        }

        if (ok && err <= 1.0) {
            t += hs;
            u = unew;
            k1 = k7;  // FSAL
            sol.t.push_back(t);
            sol.u.push_back(u);
            sol.f.push_back(k1);
            if (stop && stop(t, u)) {
                sol.truncated = true;
                sol.warning = "stopped by domain guard at t = " + fmt17(t);
                break;
            }
            double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.2);
            h *= std::clamp(fac, 1.0, 5.0);
        } else {
            double fac = ok ? std::clamp(0.9 * std::pow(err, -0.2), 0.2, 0.9) : 0.3;
            h *= fac;
        }
    }
    return sol;
}

}  // namespace finlab
