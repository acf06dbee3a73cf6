#pragma once

#include <functional>
#include <string>
#include <vector>

#include "finlab/common.hpp"

namespace finlab {

/// Right-hand side of u' = f(t, u); writes into `du`.
using OdeRhs = std::function<void(double t, const Vec& u, Vec& du)>;

/// Returns true when integration should stop before reaching t_end
/// (domain truncation); checked at every accepted step.
using OdeStop = std::function<bool(double t, const Vec& u)>;

struct OdeOptions {
    double rtol = 1e-10;
    double atol = 1e-10;
    double max_step = 0.0;  // 0 -> no cap
    long max_steps = 200000;
};

/// Accepted-step trajectory of an adaptive Dormand-Prince 5(4) run.
/// Evaluation between nodes uses cubic Hermite on (state, derivative) pairs;
/// with the default tolerances and a max_step cap the interpolation error is
/// far below the integration tolerance.
class OdeSolution {
  public:
    std::vector<double> t;
    std::vector<Vec> u;
    std::vector<Vec> f;
    bool truncated = false;
    std::string warning;

    double t_begin() const { return t.front(); }
    double t_end() const { return t.back(); }

    /// State at time tq (clamped to the covered range).
    Vec eval(double tq) const;
    /// Time derivative of the interpolant at tq.
    Vec eval_derivative(double tq) const;

  private:
    std::size_t segment(double tq) const;
};

/// Integrate u' = rhs(t, u) from (t0, u0) to t1 (t1 may be < t0).
/// Stops early when `stop` fires or the step size underflows; in both cases
/// the result is marked truncated with a warning instead of throwing.
OdeSolution integrate_dopri5(const OdeRhs& rhs, double t0, double t1, Vec u0,
                             const OdeOptions& opts = {}, const OdeStop& stop = nullptr);

}  // namespace finlab
