#pragma once

#include <string>
#include <vector>

#include "finlab/expr.hpp"
#include "finlab/linalg.hpp"
#include "finlab/tensor.hpp"

namespace finlab {

/// Riemannian metric a_ij(x) given componentwise as expressions.
/// Symmetry holds by construction (the (j,i) slot reuses the (i,j)
/// expression); positive definiteness is checked at every evaluated point.
class RiemannMetric {
  public:
    RiemannMetric() = default;
    RiemannMetric(int n, std::vector<std::vector<Expression>> comps, ParamMap params = {});

    /// Parse components from strings; `comps` is upper-triangular-or-full,
    /// missing lower entries mirrored.
    static RiemannMetric parse(int n, const std::vector<std::vector<std::string>>& comps,
                               ParamMap params = {});
    /// Euclidean metric (identity components).
    static RiemannMetric euclidean(int n);

    int dim() const { return n_; }

    /// a_ij at x; throws SingularError if not positive definite.
    SmallMatrix value(VecView x) const;
    /// a^ij at x.
    SmallMatrix inverse(VecView x) const;
    /// a_ij and all first derivatives da[k](i,j) = d a_ij / d x^k.
    void value_and_derivs(VecView x, SmallMatrix& a, std::vector<SmallMatrix>& da) const;

    /// alpha(x, y) = sqrt(a_ij y^i y^j).
    double alpha(VecView x, VecView y) const;

    /// Component expression (for the Taylor evaluation path).
    const Expression& component(int i, int j) const { return comps_[i][j]; }
    const ParamMap& params() const { return params_; }

  private:
    int n_ = 0;
    std::vector<std::vector<Expression>> comps_;
    ParamMap params_;
};

/// 1-form beta = b_i(x) y^i with expression components.
class OneForm {
  public:
    OneForm() = default;
    OneForm(int n, std::vector<Expression> comps, ParamMap params = {});
    static OneForm parse(int n, const std::vector<std::string>& comps, ParamMap params = {});
    static OneForm zero(int n);

    int dim() const { return n_; }
    Vec value(VecView x) const;
    /// b_i and db[k][i] = d b_i / d x^k.
    void value_and_derivs(VecView x, Vec& b, std::vector<Vec>& db) const;
    double beta(VecView x, VecView y) const;
    const Expression& component(int i) const { return comps_[i]; }
    const ParamMap& params() const { return params_; }

  private:
    int n_ = 0;
    std::vector<Expression> comps_;
    ParamMap params_;
};

/// The covariant-derivative package of beta relative to alpha at (x, y):
/// r/s splits, raised and contracted variants, and the norm b^2.
struct BetaInvariants {
    int n = 0;
    SmallMatrix nabla_b{0};  // b_{i|j}
    SmallMatrix r{0};        // r_ij (symmetric)
    SmallMatrix s{0};        // s_ij (antisymmetric)
    SmallMatrix s_mixed{0};  // s^i_j = a^{ih} s_hj
    Vec b_up;                // b^i = a^{ij} b_j
    Vec b_low;               // b_i
    Vec r_low;               // r_j = b^i r_ij
    Vec s_low;               // s_j = b^i s_ij
    Vec r_i0;                // r_ij y^j
    Vec s_i0;                // s_ij y^j
    Vec s_up0;               // s^i_0 = s^i_j y^j
    double r0 = 0;           // r_j y^j
    double s0 = 0;           // s_j y^j
    double r00 = 0;          // r_ij y^i y^j
    double b2 = 0;           // a^{ij} b_i b_j
    double b() const;
};

/// Christoffel symbols of a at x: Gamma^i_jk, symmetric in (j, k).
TensorValue levi_civita(const RiemannMetric& a, VecView x);

/// Geodesic spray of alpha: G_alpha^i = 1/2 Gamma^i_jk y^j y^k.
TensorValue spray_alpha(const RiemannMetric& a, VecView x, VecView y);

/// b_{i|j} = d_j b_i - b_l Gamma^l_ij and the full r/s package.
BetaInvariants beta_invariants(const RiemannMetric& a, const OneForm& beta, VecView x, VecView y);

}  // namespace finlab
