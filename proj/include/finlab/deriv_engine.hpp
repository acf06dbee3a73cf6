#pragma once

#include <functional>
#include <memory>

#include "finlab/expr.hpp"
#include "finlab/multiindex.hpp"
#include "finlab/taylor.hpp"

namespace finlab {

/// A scalar field f(x, y) on T(M) \ 0, evaluable both on plain doubles and on
/// Taylor scalars (the same code path, lifted). Implementations must be pure.
class ScalarField {
  public:
    virtual ~ScalarField() = default;
    virtual int dim() const = 0;
    virtual double value(VecView x, VecView y) const = 0;
    virtual TaylorScalar value(std::span<const TaylorScalar> x,
                               std::span<const TaylorScalar> y) const = 0;
};

/// Adapter for generic callables `f(span<const S> x, span<const S> y) -> S`.
template <class Fn>
class LambdaField final : public ScalarField {
  public:
    LambdaField(int dim, Fn fn) : dim_(dim), fn_(std::move(fn)) {}
    int dim() const override { return dim_; }
    double value(VecView x, VecView y) const override { return fn_(x, y); }
    TaylorScalar value(std::span<const TaylorScalar> x,
                       std::span<const TaylorScalar> y) const override {
        return fn_(x, y);
    }

  private:
    int dim_;
    Fn fn_;
};

template <class Fn>
LambdaField<Fn> make_field(int dim, Fn fn) {
    return LambdaField<Fn>(dim, std::move(fn));
}

/// A parsed expression as a scalar field (parameters bound at construction).
class ExpressionField final : public ScalarField {
  public:
    ExpressionField(Expression e, ParamMap params = {})
        : expr_(std::move(e)), params_(std::move(params)) {}
    int dim() const override { return expr_.dim(); }
    double value(VecView x, VecView y) const override { return expr_.eval(x, y, params_); }
    TaylorScalar value(std::span<const TaylorScalar> x,
                       std::span<const TaylorScalar> y) const override {
        return expr_.eval(x, y, params_);
    }
    const Expression& expr() const { return expr_; }

  private:
    Expression expr_;
    ParamMap params_;
};

/// All mixed partials of a scalar field at a base point, complete for
/// x-orders <= order_x and y-orders <= order_y. One entry per multi-index;
/// symmetry of mixed partials is structural (a multi-index carries only the
/// orders, not the differentiation sequence).
class Jet {
  public:
    Jet(Vec x, Vec y, TaylorScalar t);

    const Vec& x() const { return x_; }
    const Vec& y() const { return y_; }
    int dim() const { return static_cast<int>(x_.size()); }
    int order_x() const { return t_.valid_x(); }
    int order_y() const { return t_.valid_y(); }

    double value() const { return t_.value(); }

    /// Derivative for a flat multi-index of length 2n (x-group then y-group).
    double deriv(const MultiIndex& idx) const;
    /// Derivative for separate x/y-group orders.
    double deriv(const std::vector<int>& kx, const std::vector<int>& ky) const;

    const TaylorScalar& taylor() const { return t_; }

  private:
    Vec x_, y_;
    TaylorScalar t_;
};

/// Exact (to machine rounding) mixed partials via truncated Taylor
/// arithmetic lifted through f's evaluation. order_x + order_y <= 6.
Jet eval_jet(const ScalarField& f, VecView x, VecView y, int order_x, int order_y);

/// Central finite difference with 2-level Richardson extrapolation.
/// Step h_v = eps^(1/(order+2)) * (1 + |base_v|) per differentiated variable.
/// Total order <= 4; expected relative accuracy ~1e-6 for smooth f at
/// order <= 3 (documented, deterministic).
double fd_oracle(const ScalarField& f, VecView x, VecView y, const MultiIndex& idx);

/// Same, but applying the per-variable difference stencils in the given
/// variable sequence (each entry a flat variable id, repeats allowed).
/// Exists so tests can probe symmetry of mixed partials through genuinely
/// permuted stencil orders.
double fd_oracle_sequence(const ScalarField& f, VecView x, VecView y,
                          const std::vector<int>& var_sequence);

/// max over sample points of |y^i df/dy^i - f| / max(1, |f|); zero for
/// positively 1-homogeneous fields.
double euler_homogeneity_residual(const ScalarField& f, VecView x, VecView y);

}  // namespace finlab
