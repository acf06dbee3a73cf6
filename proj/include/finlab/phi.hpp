#pragma once

#include <array>
#include <memory>
#include <string>

#include "finlab/ode.hpp"
#include "finlab/report.hpp"
#include "finlab/series1.hpp"

namespace finlab {

/// A phi family: the profile function of an (alpha, beta)-metric
/// F = alpha * phi(beta/alpha), with exact local Taylor expansions.
///
/// `domain_radius` is the half-width b0 of the s-interval on which the family
/// is evaluable; `boundary_evaluable` says whether phi extends continuously
/// to |s| = b0 (value only, derivatives may blow up there).
class PhiFamily {
  public:
    virtual ~PhiFamily() = default;

    virtual std::string spec_string() const = 0;
    virtual double domain_radius() const = 0;
    virtual bool boundary_evaluable() const { return false; }

    /// Taylor coefficients of phi at s, exact for closed-form kinds; for the
    /// ODE kind, seeded from the dense solution and propagated through the
    /// equation itself. Requires |s| < domain_radius().
    virtual Series1 series(double s, int order) const = 0;

    /// phi(s); for boundary-evaluable kinds |s| = b0 is allowed.
    virtual double value(double s) const { return series(s, 0).value(); }

    /// (phi, phi', phi'', phi''', phi'''').
    std::array<double, 5> jet4(double s) const;

    /// Largest |s| with valid derivative data (equals domain_radius for
    /// closed forms; the reached integration range for the ODE kind).
    virtual double coverage() const { return domain_radius(); }

    /// Warnings accumulated at construction (domain truncation etc.).
    virtual const std::vector<std::string>& warnings() const {
        static const std::vector<std::string> none;
        return none;
    }

  protected:
    void check_interior(double s) const;
};

using PhiPtr = std::shared_ptr<const PhiFamily>;

/// phi = c1 sqrt(1 + c2 s^2) + c3 s, c1 > 0 (the Randers-type class).
PhiPtr phi_randers_type(double c1, double c2, double c3);
/// phi = (1 + s)^2 (the square metric profile).
PhiPtr phi_square();
/// phi = 1 / (1 - s) (the Matsumoto metric profile).
PhiPtr phi_matsumoto();
/// phi = c exp( int_0^s (k t + q sqrt(b^2-t^2)) / (1 + k t^2 + q t sqrt(b^2-t^2)) dt ),
/// the family with Q = k s + q sqrt(b^2 - s^2). Evaluated by adaptive
/// quadrature; extends continuously to |s| = b but its second derivative is
/// singular there (almost regular).
PhiPtr phi_uni(double c, double k, double q, double b);

/// Numerical solution of the isotropic-S-curvature profile equation for a
/// given constant k: the second-order equation for Q obtained from
///   Phi = -2(n+1) k phi Delta^2 / (b^2 - s^2)
/// coupled with the recovery phi'/phi = Q/(1 + s Q), phi(0) = 1, integrated
/// from the free initial data (Q0, Q0') at s = 0. Dense output covers at
/// least |s| <= 0.95 b (more where the solution admits it); integration runs
/// in the variable psi = asin(s/b), which removes most of the boundary
/// stiffness.
PhiPtr solve_isotropic_ode(double k, int n, double b, double Q0, double Q0p);

/// Parse a family spec string: "square", "matsumoto", "randers:c1,c2,c3",
/// "uni:c,k,q,b", "odeP:k,n,b,Q0,Q0p".
PhiPtr phi_parse(const std::string& spec);

/// The pointwise Q-machinery of an (alpha, beta)-metric at (s, b).
struct QTPD {
    double s = 0, b = 0;
    double Q = 0, Qp = 0, Qpp = 0, Qppp = 0;
    double Theta = 0, Psi = 0;
    double Delta = 0;  // = 1 + sQ + (b^2 - s^2) Q'
    double phi = 0, phip = 0, phipp = 0;
};

/// Q = phi'/(phi - s phi'), Theta, Psi, Delta at (s, b). Throws
/// SingularError naming which of Q / Theta / Psi hit a vanishing denominator.
QTPD q_theta_psi(const PhiFamily& phi, double s, double b);

/// Phi = -(Q - sQ')[n Delta + 1 + sQ] - (b^2 - s^2)(1 + sQ) Q''.
double phi_capital(const QTPD& q, int n);
double phi_capital(const PhiFamily& phi, double s, double b, int n);

/// Check phi > 0 and phi - s phi' + (b^2 - s^2) phi'' > 0 on |s| <= b.
/// label: "regular" / "almost-regular" (holds in the interior, degenerates or
/// turns singular at the boundary) / "irregular".
ClassifierReport regularity_check(const PhiFamily& phi, double b, int grid_count = 201);

struct RandersFit {
    double c1 = 0, c2 = 0, c3 = 0;
    double residual = 0;  // sup deviation over the fit grid
    bool is_randers_type(double tol = 1e-8) const { return c1 > 0 && residual < tol; }
};

/// Least-squares fit of phi against c1 sqrt(1 + c2 s^2) + c3 s on a fixed
/// 41-point grid over |s| <= 0.9 b0 (capped at the family's own domain).
RandersFit randers_type_fit(const PhiFamily& phi, double b0);

/// Sup over |s| <= 0.9 * coverage of the defect of the isotropic-S profile
/// equation along a family (meaningful for the odeP kind; the derivative
/// data comes from the dense-output interpolant, not from the equation).
double ode_p_residual(const PhiFamily& phi, double k, int n, double b, int grid_count = 101);

}  // namespace finlab
