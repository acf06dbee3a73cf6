#include "finlab/deriv_engine.hpp"

#include <cmath>
#include <limits>

namespace finlab {

Jet::Jet(Vec x, Vec y, TaylorScalar t) : x_(std::move(x)), y_(std::move(y)), t_(std::move(t)) {}

double Jet::deriv(const MultiIndex& idx) const {
    int n = dim();
    if (idx.size() != 2 * n) throw PreconditionError("multi-index length must be 2n");
    std::vector<int> kx(idx.k.begin(), idx.k.begin() + n);
    std::vector<int> ky(idx.k.begin() + n, idx.k.end());
    return t_.deriv(kx, ky);
}

double Jet::deriv(const std::vector<int>& kx, const std::vector<int>& ky) const {
    return t_.deriv(kx, ky);
}

Jet eval_jet(const ScalarField& f, VecView x, VecView y, int order_x, int order_y) {
    int n = f.dim();
    if (static_cast<int>(x.size()) != n || static_cast<int>(y.size()) != n)
        throw PreconditionError("point dimension does not match the field");
    if (order_x < 0 || order_y < 0 || order_x + order_y > 6)
        throw PreconditionError("eval_jet supports order_x + order_y <= 6");
    auto sp = JetSpace::get(n, n, order_x, order_y);
    std::vector<TaylorScalar> tx, ty;
    tx.reserve(n);
    ty.reserve(n);
    for (int i = 0; i < n; ++i) tx.push_back(TaylorScalar::variable(sp, i, x[i]));
    for (int i = 0; i < n; ++i) ty.push_back(TaylorScalar::variable(sp, n + i, y[i]));
    TaylorScalar t = f.value(tx, ty);
    return Jet(Vec(x.begin(), x.end()), Vec(y.begin(), y.end()), std::move(t));
}

namespace {

// central difference stencils (offset in units of h, weight); weights divide h^order
struct StencilEntry {
    double offset, weight;
};

const std::vector<StencilEntry>& stencil(int order) {
    static const std::vector<StencilEntry> s1 = {{1, 0.5}, {-1, -0.5}};
    static const std::vector<StencilEntry> s2 = {{1, 1}, {0, -2}, {-1, 1}};
    static const std::vector<StencilEntry> s3 = {{2, 0.5}, {1, -1}, {-1, 1}, {-2, -0.5}};
    static const std::vector<StencilEntry> s4 = {{2, 1}, {1, -4}, {0, 6}, {-1, -4}, {-2, 1}};
    switch (order) {
        case 1: return s1;
        case 2: return s2;
        case 3: return s3;
        case 4: return s4;
        default: throw PreconditionError("fd stencil order must be 1..4");
    }
}

// apply the order-k central stencil in variable v to g, at step h
double apply_stencil(const std::function<double(Vec&)>& g, Vec& pt, int v, int order, double h) {
    double acc = 0.0;
    double saved = pt[v];
    for (const auto& e : stencil(order)) {
        pt[v] = saved + e.offset * h;
        acc += e.weight * g(pt);
    }
    pt[v] = saved;
    return acc / std::pow(h, order);
}

double fd_with_step(const ScalarField& f, VecView x, VecView y, const std::vector<int>& orders,
                    double hscale) {
    const int n = f.dim();
    // flatten the point; recurse over variables with nonzero order
    Vec pt(2 * n);
    for (int i = 0; i < n; ++i) pt[i] = x[i];
    for (int i = 0; i < n; ++i) pt[n + i] = y[i];

    std::vector<int> vars;
    for (int v = 0; v < 2 * n; ++v)
        if (orders[v] > 0) vars.push_back(v);

    // nested application: innermost evaluates f, each level differentiates one variable
    std::function<double(Vec&, std::size_t)> level = [&](Vec& p, std::size_t vi) -> double {
        if (vi == vars.size()) {
            return f.value(VecView(p.data(), n), VecView(p.data() + n, n));
        }
        int v = vars[vi];
        int ord = orders[v];
        double h = hscale * (1.0 + std::fabs(p[v]));
        std::function<double(Vec&)> g = [&](Vec& q) { return level(q, vi + 1); };
        return apply_stencil(g, p, v, ord, h);
    };
    return level(pt, 0);
}

}  // namespace

double fd_oracle(const ScalarField& f, VecView x, VecView y, const MultiIndex& idx) {
    const int n = f.dim();
    if (idx.size() != 2 * n) throw PreconditionError("multi-index length must be 2n");
    int total = idx.total();
    if (total > 4) throw PreconditionError("fd_oracle supports total order <= 4");
    if (total == 0) return f.value(x, y);

    // Base scale h = eps^(1/(order+2)); the Richardson pair runs at (4h, 8h),
    // which keeps the subtraction roundoff of order-3 stencils below the
    // documented 1e-6 while the extrapolated truncation error stays O(h^4).
    const double eps = std::numeric_limits<double>::epsilon();
    double h = std::pow(eps, 1.0 / (total + 2));
    if (h < 1e-300) throw DomainError("fd_oracle step underflow");
    double fine = fd_with_step(f, x, y, idx.k, 4 * h);
    double coarse = fd_with_step(f, x, y, idx.k, 8 * h);
    return (4.0 * fine - coarse) / 3.0;
}

double fd_oracle_sequence(const ScalarField& f, VecView x, VecView y,
                          const std::vector<int>& var_sequence) {
    const int n = f.dim();
    if (var_sequence.size() > 4) throw PreconditionError("fd_oracle supports total order <= 4");
    const double eps = std::numeric_limits<double>::epsilon();
    double hscale = std::pow(eps, 1.0 / (static_cast<int>(var_sequence.size()) + 2));

    // one first-order stencil per sequence entry, applied in the given order
    std::function<double(Vec&, std::size_t)> level = [&](Vec& p, std::size_t vi) -> double {
        if (vi == var_sequence.size())
            return f.value(VecView(p.data(), n), VecView(p.data() + n, n));
        int v = var_sequence[vi];
        double h = hscale * (1.0 + std::fabs(p[v]));
        std::function<double(Vec&)> g = [&](Vec& q) { return level(q, vi + 1); };
        return apply_stencil(g, p, v, 1, h);
    };

    auto run = [&](double scale) {
        Vec pt(2 * n);
        for (int i = 0; i < n; ++i) pt[i] = x[i];
        for (int i = 0; i < n; ++i) pt[n + i] = y[i];
        double saved = hscale;
        hscale = scale;
        double r = level(pt, 0);
        hscale = saved;
        return r;
    };
    double base = std::pow(eps, 1.0 / (static_cast<int>(var_sequence.size()) + 2));
    double fine = run(4 * base);
    double coarse = run(8 * base);
    return (4.0 * fine - coarse) / 3.0;
}

double euler_homogeneity_residual(const ScalarField& f, VecView x, VecView y) {
    Jet j = eval_jet(f, x, y, 0, 1);
    const int n = f.dim();
    double contracted = 0.0;
    std::vector<int> kx(n, 0), ky(n, 0);
    for (int i = 0; i < n; ++i) {
        ky[i] = 1;
        contracted += y[i] * j.deriv(kx, ky);
        ky[i] = 0;
    }
    double fv = j.value();
    return std::fabs(contracted - fv) / std::max(1.0, std::fabs(fv));
}

}  // namespace finlab
