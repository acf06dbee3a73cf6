#include "finlab/geometry.hpp"

#include <cmath>

namespace finlab {

namespace {

// x-jets (order 1) of a family of expressions of x only
struct XJetContext {
    std::vector<TaylorScalar> tx, ty;
    XJetContext(int n, VecView x) {
        auto sp = JetSpace::get(n, n, 1, 0);
        for (int i = 0; i < n; ++i) tx.push_back(TaylorScalar::variable(sp, i, x[i]));
        for (int i = 0; i < n; ++i) ty.push_back(TaylorScalar::variable(sp, n + i, 0.0));
    }
};

}  // namespace

RiemannMetric::RiemannMetric(int n, std::vector<std::vector<Expression>> comps, ParamMap params)
    : n_(n), comps_(std::move(comps)), params_(std::move(params)) {
    if (static_cast<int>(comps_.size()) != n) throw PreconditionError("metric needs n rows");
    for (auto& row : comps_)
        if (static_cast<int>(row.size()) != n) throw PreconditionError("metric needs n columns");
    // mirror: the (j, i) slot shares the (i, j) expression
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) comps_[j][i] = comps_[i][j];
}

RiemannMetric RiemannMetric::parse(int n, const std::vector<std::vector<std::string>>& comps,
                                   ParamMap params) {
    std::vector<std::vector<Expression>> e(n, std::vector<Expression>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const std::string& text =
                (i < static_cast<int>(comps.size()) && j < static_cast<int>(comps[i].size()))
                    ? comps[i][j]
                    : comps[j][i];
            e[i][j] = Expression::parse(text, n);
        }
    return RiemannMetric(n, std::move(e), std::move(params));
}

RiemannMetric RiemannMetric::euclidean(int n) {
    std::vector<std::vector<Expression>> e(n, std::vector<Expression>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) e[i][j] = Expression::constant(i == j ? 1.0 : 0.0, n);
    return RiemannMetric(n, std::move(e));
}

SmallMatrix RiemannMetric::value(VecView x) const {
    SmallMatrix a(n_);
    Vec y0(n_, 0.0);
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) a(i, j) = a(j, i) = comps_[i][j].eval(x, y0, params_);
    SmallMatrix L(n_);
    if (!cholesky(a, L))
        throw SingularError("RiemannMetric", "a_ij not positive definite at " + point_str(x));
    return a;
}

SmallMatrix RiemannMetric::inverse(VecView x) const {
    return spd_inverse(value(x), "RiemannMetric");
}

void RiemannMetric::value_and_derivs(VecView x, SmallMatrix& a, std::vector<SmallMatrix>& da) const {
    XJetContext ctx(n_, x);
    a = SmallMatrix(n_);
    da.assign(n_, SmallMatrix(n_));
    std::vector<int> kx(n_, 0), ky(n_, 0);
    for (int i = 0; i < n_; ++i)
        for (int j = i; j < n_; ++j) {
            TaylorScalar t = comps_[i][j].eval(std::span<const TaylorScalar>(ctx.tx),
                                               std::span<const TaylorScalar>(ctx.ty), params_);
            a(i, j) = a(j, i) = t.value();
            for (int k = 0; k < n_; ++k) {
                kx[k] = 1;
                da[k](i, j) = da[k](j, i) = t.deriv(kx, ky);
                kx[k] = 0;
            }
        }
    SmallMatrix L(n_);
    if (!cholesky(a, L))
        throw SingularError("RiemannMetric", "a_ij not positive definite at " + point_str(x));
}

double RiemannMetric::alpha(VecView x, VecView y) const {
    SmallMatrix a = value(x);
    double q = 0.0;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) q += a(i, j) * y[i] * y[j];
    if (q <= 0.0) throw DomainError("alpha^2 <= 0 at " + point_str(x, y));
    return std::sqrt(q);
}

OneForm::OneForm(int n, std::vector<Expression> comps, ParamMap params)
    : n_(n), comps_(std::move(comps)), params_(std::move(params)) {
    if (static_cast<int>(comps_.size()) != n) throw PreconditionError("one-form needs n components");
}

OneForm OneForm::parse(int n, const std::vector<std::string>& comps, ParamMap params) {
    std::vector<Expression> e;
    for (const auto& text : comps) e.push_back(Expression::parse(text, n));
    return OneForm(n, std::move(e), std::move(params));
}

OneForm OneForm::zero(int n) {
    std::vector<Expression> e;
    for (int i = 0; i < n; ++i) e.push_back(Expression::constant(0.0, n));
    return OneForm(n, std::move(e));
}

Vec OneForm::value(VecView x) const {
    Vec b(n_);
    Vec y0(n_, 0.0);
    for (int i = 0; i < n_; ++i) b[i] = comps_[i].eval(x, y0, params_);
    return b;
}

void OneForm::value_and_derivs(VecView x, Vec& b, std::vector<Vec>& db) const {
    XJetContext ctx(n_, x);
    b.assign(n_, 0.0);
    db.assign(n_, Vec(n_, 0.0));
    std::vector<int> kx(n_, 0), ky(n_, 0);
    for (int i = 0; i < n_; ++i) {
        TaylorScalar t = comps_[i].eval(std::span<const TaylorScalar>(ctx.tx),
                                        std::span<const TaylorScalar>(ctx.ty), params_);
        b[i] = t.value();
        for (int k = 0; k < n_; ++k) {
            kx[k] = 1;
            db[k][i] = t.deriv(kx, ky);
            kx[k] = 0;
        }
    }
}

double OneForm::beta(VecView x, VecView y) const {
    Vec b = value(x);
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += b[i] * y[i];
    return s;
}

double BetaInvariants::b() const { return std::sqrt(b2); }

namespace {

// Gamma^i_jk as a flat array [i*n*n + j*n + k]
std::vector<double> christoffel_raw(const RiemannMetric& a, VecView x) {
    const int n = a.dim();
    SmallMatrix av(n);
    std::vector<SmallMatrix> da;
    a.value_and_derivs(x, av, da);
    SmallMatrix inv = spd_inverse(av, "RiemannMetric");
    std::vector<double> g(n * n * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                double s = 0.0;
                for (int l = 0; l < n; ++l)
                    s += inv(i, l) * (da[j](l, k) + da[k](l, j) - da[l](j, k));
                g[(i * n + j) * n + k] = 0.5 * s;
            }
    return g;
}

}  // namespace

TensorValue levi_civita(const RiemannMetric& a, VecView x) {
    const int n = a.dim();
    auto g = christoffel_raw(a, x);
    TensorValue t(n, "udd");
    t.data() = std::move(g);
    return t;
}

TensorValue spray_alpha(const RiemannMetric& a, VecView x, VecView y) {
    const int n = a.dim();
    bool nonzero = false;
    for (int i = 0; i < n; ++i) nonzero |= (y[i] != 0.0);
    if (!nonzero) throw DomainError("spray undefined at y = 0");
    auto g = christoffel_raw(a, x);
    TensorValue t(n, "u");
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) s += g[(i * n + j) * n + k] * y[j] * y[k];
        t({i}) = 0.5 * s;
    }
    return t;
}

BetaInvariants beta_invariants(const RiemannMetric& a, const OneForm& beta, VecView x, VecView y) {
    const int n = a.dim();
    BetaInvariants inv;
    inv.n = n;
    SmallMatrix av(n);
    std::vector<SmallMatrix> da;
    a.value_and_derivs(x, av, da);
    SmallMatrix ainv = spd_inverse(av, "RiemannMetric");
    auto gamma = christoffel_raw(a, x);

    Vec b;
    std::vector<Vec> db;
    beta.value_and_derivs(x, b, db);
    inv.b_low = b;

    inv.nabla_b = SmallMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = db[j][i];
            for (int l = 0; l < n; ++l) s -= b[l] * gamma[(l * n + i) * n + j];
            inv.nabla_b(i, j) = s;
        }

    inv.r = SmallMatrix(n);
    inv.s = SmallMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            inv.r(i, j) = 0.5 * (inv.nabla_b(i, j) + inv.nabla_b(j, i));
            inv.s(i, j) = 0.5 * (inv.nabla_b(i, j) - inv.nabla_b(j, i));
        }

    inv.b_up.assign(n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) inv.b_up[i] += ainv(i, j) * b[j];

    inv.s_mixed = SmallMatrix(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            double s = 0.0;
            for (int h = 0; h < n; ++h) s += ainv(i, h) * inv.s(h, j);
            inv.s_mixed(i, j) = s;
        }

    inv.r_low.assign(n, 0.0);
    inv.s_low.assign(n, 0.0);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            inv.r_low[j] += inv.b_up[i] * inv.r(i, j);
            inv.s_low[j] += inv.b_up[i] * inv.s(i, j);
        }

    inv.r_i0.assign(n, 0.0);
    inv.s_i0.assign(n, 0.0);
    inv.s_up0.assign(n, 0.0);
    inv.r0 = inv.s0 = inv.r00 = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            inv.r_i0[i] += inv.r(i, j) * y[j];
            inv.s_i0[i] += inv.s(i, j) * y[j];
            inv.s_up0[i] += inv.s_mixed(i, j) * y[j];
        }
        inv.r0 += inv.r_low[i] * y[i];
        inv.s0 += inv.s_low[i] * y[i];
        inv.r00 += inv.r_i0[i] * y[i];
    }

    inv.b2 = 0.0;
    for (int i = 0; i < n; ++i) inv.b2 += inv.b_up[i] * b[i];
    return inv;
}

}  // namespace finlab
