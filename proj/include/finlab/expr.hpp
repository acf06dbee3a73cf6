#pragma once

#include <map>
#include <memory>
#include <string>

#include "finlab/common.hpp"
#include "finlab/taylor.hpp"

namespace finlab {

using ParamMap = std::map<std::string, double>;

namespace detail {
struct ExprNode;
}

/// A parsed expression over the variables x1..xn, y1..yn, real literals,
/// named parameters, + - * / ^ (with ^ binding tighter than unary minus,
/// right associative), and the functions exp, log, sin, cos, sqrt, abs.
/// Immutable after parse; evaluation is pure.
class Expression {
  public:
    Expression() = default;

    /// Parse `text` for an n-dimensional manifold (variables x1..xn, y1..yn).
    /// Throws ParseError with the 0-based offset of the offending token.
    static Expression parse(const std::string& text, int dim);

    /// Wrap a plain constant.
    static Expression constant(double v, int dim);

    int dim() const { return dim_; }
    bool empty() const { return !root_; }

    double eval(VecView x, VecView y, const ParamMap& params = {}) const;
    TaylorScalar eval(std::span<const TaylorScalar> x, std::span<const TaylorScalar> y,
                      const ParamMap& params = {}) const;

    /// Printed form; parse(str()) is structurally identical to *this.
    std::string str() const;

    /// Structural equality (same tree, same literals).
    bool operator==(const Expression& o) const;

    /// Names of parameters appearing in the tree.
    std::vector<std::string> param_names() const;

  private:
    std::shared_ptr<const detail::ExprNode> root_;
    int dim_ = 0;
};

}  // namespace finlab
