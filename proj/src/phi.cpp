#include "finlab/phi.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "finlab/quadrature.hpp"

namespace finlab {

void PhiFamily::check_interior(double s) const {
    if (!(std::fabs(s) < domain_radius()))
        throw DomainError("s = " + fmt17(s) + " outside the phi domain (-" +
                          fmt17(domain_radius()) + ", " + fmt17(domain_radius()) + ")");
}

std::array<double, 5> PhiFamily::jet4(double s) const {
    Series1 ser = series(s, 4);
    return {ser.deriv(0), ser.deriv(1), ser.deriv(2), ser.deriv(3), ser.deriv(4)};
}

namespace {

Series1 truncate(const Series1& s, int order) {
    std::vector<double> c(order + 1, 0.0);
    for (int k = 0; k <= std::min(order, s.order()); ++k) c[k] = s.coeff(k);
    return Series1(std::move(c));
}

// ---- closed forms ----

class RandersTypePhi final : public PhiFamily {
  public:
    RandersTypePhi(double c1, double c2, double c3) : c1_(c1), c2_(c2), c3_(c3) {
        if (c1 <= 0.0) throw PreconditionError("randers-type phi needs c1 > 0");
        double r1 = (c2_ < 0.0) ? 1.0 / std::sqrt(-c2_) : std::numeric_limits<double>::infinity();
        // positivity boundary: c1 sqrt(1 + c2 s^2) = -c3 s
        double d = c3_ * c3_ - c1_ * c1_ * c2_;
        double rpos = (d > 0.0) ? c1_ / std::sqrt(d) : std::numeric_limits<double>::infinity();
        b0_ = std::min(r1, rpos);
    }
    std::string spec_string() const override {
        return "randers:" + fmt17(c1_) + "," + fmt17(c2_) + "," + fmt17(c3_);
    }
    double domain_radius() const override { return b0_; }
    Series1 series(double s, int order) const override {
        check_interior(s);
        Series1 ss = Series1::variable(order, s);
        return c1_ * sqrt(1.0 + c2_ * ss * ss) + c3_ * ss;
    }

  private:
    double c1_, c2_, c3_, b0_;
};

class SquarePhi final : public PhiFamily {
  public:
    std::string spec_string() const override { return "square"; }
    double domain_radius() const override { return 1.0; }
    Series1 series(double s, int order) const override {
        check_interior(s);
        Series1 ss = Series1::variable(order, s);
        return (1.0 + ss) * (1.0 + ss);
    }
};

class MatsumotoPhi final : public PhiFamily {
  public:
    std::string spec_string() const override { return "matsumoto"; }
    double domain_radius() const override { return 1.0; }
    Series1 series(double s, int order) const override {
        check_interior(s);
        Series1 ss = Series1::variable(order, s);
        return 1.0 / (1.0 - ss);
    }
};

// ---- the exponential family with Q = k s + q sqrt(b^2 - s^2) ----

class UniPhi final : public PhiFamily {
  public:
    UniPhi(double c, double k, double q, double b) : c_(c), k_(k), q_(q), b_(b) {
        if (c <= 0.0) throw PreconditionError("uni phi needs c > 0");
        if (q < 0.0) throw PreconditionError("uni phi needs q >= 0");
        if (b <= 0.0) throw PreconditionError("uni phi needs b > 0");
        // the integrand denominator 1 + k t^2 + q t sqrt(b^2 - t^2) must stay
        // positive across the domain
        for (int i = 0; i <= 800; ++i) {
            double t = b_ * (2.0 * i / 800.0 - 1.0);
            if (denom(t) < 1e-10)
                throw DomainError("uni integrand denominator vanishes at t = " + fmt17(t));
        }
    }
    std::string spec_string() const override {
        return "uni:" + fmt17(c_) + "," + fmt17(k_) + "," + fmt17(q_) + "," + fmt17(b_);
    }
    double domain_radius() const override { return b_; }
    bool boundary_evaluable() const override { return true; }
    double value(double s) const override {
        if (std::fabs(s) > b_) throw DomainError("s = " + fmt17(s) + " outside the phi domain");
        double integral = adaptive_integral([this](double t) { return integrand(t); }, 0.0, s, 1e-12);
        return c_ * std::exp(integral);
    }
    Series1 series(double s, int order) const override {
        check_interior(s);
        if (order == 0) return Series1(std::vector<double>{value(s)});
        Series1 t = Series1::variable(order, s);
        Series1 root = sqrt(b_ * b_ - t * t);
        Series1 g = (k_ * t + q_ * root) / (1.0 + k_ * t * t + q_ * t * root);
        Series1 integral = truncate(g.antiderivative(), order);  // vanishes at offset 0
        return value(s) * exp(integral);
    }

  private:
    double denom(double t) const {
        return 1.0 + k_ * t * t + q_ * t * std::sqrt(std::max(0.0, b_ * b_ - t * t));
    }
    double integrand(double t) const {
        double root = std::sqrt(std::max(0.0, b_ * b_ - t * t));
        return (k_ * t + q_ * root) / (1.0 + k_ * t * t + q_ * t * root);
    }
    double c_, k_, q_, b_;
};

// ---- numerical solutions of the isotropic-S profile equation ----

// s-form right hand side of the coupled system (Q, R = Q', phi);
// shared by the double-precision integration and the Series1 recurrence
template <class S>
std::array<S, 3> p_rhs(const S& s, const S& Q, const S& R, const S& phi, double k, int n,
                       double b2) {
    S tau = b2 - s * s;
    S one_sQ = 1.0 + s * Q;
    S delta = one_sQ + tau * R;
    S qpp = (2.0 * (n + 1) * k * phi * delta * delta / tau - (Q - s * R) * (double(n) * delta + one_sQ)) /
            (tau * one_sQ);
    S phip = phi * Q / one_sQ;
    return {R, qpp, phip};
}

class OdePhi final : public PhiFamily {
  public:
    OdePhi(double k, int n, double b, double Q0, double Q0p)
        : k_(k), n_(n), b_(b), Q0_(Q0), Q0p_(Q0p) {
        if (b <= 0.0) throw PreconditionError("odeP needs b > 0");
        if (n < 2) throw PreconditionError("odeP needs n >= 2");
        const double psi_max = std::asin(1.0 - 1e-7);

        OdeRhs rhs = [this](double psi, const Vec& u, Vec& du) {
            double s = b_ * std::sin(psi);
            double jac = b_ * std::cos(psi);
            auto [dQ, dR, dP] = p_rhs<double>(s, u[0], u[1], u[2], k_, n_, b_ * b_);
            du = {dQ * jac, dR * jac, dP * jac};
        };
        OdeStop stop = [this](double psi, const Vec& u) {
            double s = b_ * std::sin(psi);
            return std::fabs(1.0 + s * u[0]) < 1e-8 || u[2] < 1e-12;
        };
        OdeOptions opts;
        opts.rtol = 1e-10;
        opts.atol = 1e-10;
        opts.max_step = psi_max / 2048.0;

        Vec u0{Q0, Q0p, 1.0};
        pos_ = integrate_dopri5(rhs, 0.0, psi_max, u0, opts, stop);
        neg_ = integrate_dopri5(rhs, 0.0, -psi_max, u0, opts, stop);
        cov_pos_ = b_ * std::sin(pos_.t.back());
        cov_neg_ = b_ * std::sin(-neg_.t.back());
        if (pos_.truncated) warnings_.push_back("forward branch: " + pos_.warning);
        if (neg_.truncated) warnings_.push_back("backward branch: " + neg_.warning);
        double cov = coverage();
        if (cov < 0.95 * b_)
            warnings_.push_back("dense output covers |s| <= " + fmt17(cov) +
                                " < 0.95 b; domain truncated");
    }

    std::string spec_string() const override {
        return "odeP:" + fmt17(k_) + "," + std::to_string(n_) + "," + fmt17(b_) + "," +
               fmt17(Q0_) + "," + fmt17(Q0p_);
    }
    double domain_radius() const override { return b_; }
    double coverage() const override { return std::min(cov_pos_, cov_neg_); }
    const std::vector<std::string>& warnings() const override { return warnings_; }

    double value(double s) const override { return state_at(s)[2]; }

    Series1 series(double s, int order) const override {
        Vec u = state_at(s);
        if (order == 0) return Series1(std::vector<double>{u[2]});
        // Picard recurrence: each pass fixes one more coefficient
        Series1 ss = Series1::variable(order, s);
        Series1 Q(order, u[0]), R(order, u[1]), P(order, u[2]);
        for (int it = 0; it < order; ++it) {
            auto [dQ, dR, dP] = p_rhs<Series1>(ss, Q, R, P, k_, n_, b_ * b_);
            Series1 nQ = truncate(dQ.antiderivative(), order) + u[0];
            Series1 nR = truncate(dR.antiderivative(), order) + u[1];
            Series1 nP = truncate(dP.antiderivative(), order) + u[2];
            Q = nQ;
            R = nR;
            P = nP;
        }
        return P;
    }

    /// (Q, Q', phi) from the dense solution.
    Vec state_at(double s) const {
        double cov = (s >= 0.0) ? cov_pos_ : cov_neg_;
        if (std::fabs(s) > cov + 1e-14)
            throw DomainError("s = " + fmt17(s) + " outside the integrated range |s| <= " +
                              fmt17(cov));
        double psi = std::asin(std::clamp(s / b_, -1.0, 1.0));
        return (s >= 0.0) ? pos_.eval(psi) : neg_.eval(std::fabs(psi) * (psi < 0 ? -1.0 : 1.0));
    }

    /// d/ds of (Q, Q', phi) from the dense interpolant.
    Vec state_derivative_at(double s) const {
        double psi = std::asin(std::clamp(s / b_, -1.0, 1.0));
        const OdeSolution& side = (s >= 0.0) ? pos_ : neg_;
        Vec d = side.eval_derivative(psi);
        double jac = b_ * std::cos(psi);
        for (double& v : d) v /= jac;
        return d;
    }

    double param_k() const { return k_; }
    int param_n() const { return n_; }
    double param_b() const { return b_; }

  private:
    double k_;
    int n_;
    double b_, Q0_, Q0p_;
    OdeSolution pos_, neg_;
    double cov_pos_ = 0, cov_neg_ = 0;
    std::vector<std::string> warnings_;
};

}  // namespace

PhiPtr phi_randers_type(double c1, double c2, double c3) {
    return std::make_shared<RandersTypePhi>(c1, c2, c3);
}
PhiPtr phi_square() { return std::make_shared<SquarePhi>(); }
PhiPtr phi_matsumoto() { return std::make_shared<MatsumotoPhi>(); }
PhiPtr phi_uni(double c, double k, double q, double b) {
    return std::make_shared<UniPhi>(c, k, q, b);
}
PhiPtr solve_isotropic_ode(double k, int n, double b, double Q0, double Q0p) {
    return std::make_shared<OdePhi>(k, n, b, Q0, Q0p);
}

PhiPtr phi_parse(const std::string& spec) {
    auto colon = spec.find(':');
    std::string kind = spec.substr(0, colon);
    std::vector<double> args;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                args.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw PreconditionError("bad number '" + tok + "' in phi spec '" + spec + "'");
            }
        }
    }
    auto want = [&](std::size_t n) {
        if (args.size() != n)
            throw PreconditionError("phi spec '" + spec + "' expects " + std::to_string(n) +
                                    " parameters");
    };
    if (kind == "square") {
        want(0);
        return phi_square();
    }
    if (kind == "matsumoto") {
        want(0);
        return phi_matsumoto();
    }
    if (kind == "randers") {
        want(3);
        return phi_randers_type(args[0], args[1], args[2]);
    }
    if (kind == "uni") {
        want(4);
        return phi_uni(args[0], args[1], args[2], args[3]);
    }
    if (kind == "odeP") {
        want(5);
        return solve_isotropic_ode(args[0], static_cast<int>(args[1]), args[2], args[3], args[4]);
    }
    throw PreconditionError("unknown phi family '" + kind + "'");
}

QTPD q_theta_psi(const PhiFamily& phi, double s, double b) {
    Series1 p = phi.series(s, 4);
    Series1 ss = Series1::variable(3, s);
    Series1 pp = p.derivative();           // phi', order 3
    Series1 w = truncate(p, 3) - ss * pp;  // phi - s phi'
    double phiv = p.deriv(0), phipv = p.deriv(1), phippv = p.deriv(2);

    QTPD out;
    out.s = s;
    out.b = b;
    out.phi = phiv;
    out.phip = phipv;
    out.phipp = phippv;

    if (std::fabs(w.value()) < 1e-12 * std::max(1.0, std::fabs(phiv)))
        throw SingularError("Q", "phi - s phi' vanishes at s = " + fmt17(s));
    Series1 Q = pp / w;
    out.Q = Q.deriv(0);
    out.Qp = Q.deriv(1);
    out.Qpp = Q.deriv(2);
    out.Qppp = Q.deriv(3);

    double dreg = (phiv - s * phipv) + (b * b - s * s) * phippv;
    if (std::fabs(dreg) < 1e-12 * std::max(1.0, std::fabs(phiv)))
        throw SingularError("Psi", "regularity denominator vanishes at s = " + fmt17(s));
    out.Psi = 0.5 * phippv / dreg;
    double theta_denom = 2.0 * phiv * dreg;
    if (std::fabs(theta_denom) < 1e-300)
        throw SingularError("Theta", "denominator vanishes at s = " + fmt17(s));
    out.Theta = (phiv * phipv - s * (phiv * phippv + phipv * phipv)) / theta_denom;

    // Delta through the phi route; identical to 1 + sQ + (b^2-s^2)Q' by algebra
    out.Delta = phiv * dreg / (w.value() * w.value());
    return out;
}

double phi_capital(const QTPD& q, int n) {
    double tau = q.b * q.b - q.s * q.s;
    return -(q.Q - q.s * q.Qp) * (n * q.Delta + 1.0 + q.s * q.Q) -
           tau * (1.0 + q.s * q.Q) * q.Qpp;
}

double phi_capital(const PhiFamily& phi, double s, double b, int n) {
    return phi_capital(q_theta_psi(phi, s, b), n);
}

ClassifierReport regularity_check(const PhiFamily& phi, double b, int grid_count) {
    ClassifierReport rep;
    rep.predicate = "regularity";
    rep.tol = 0.0;

    double margin = std::numeric_limits<double>::infinity();
    double worst_s = 0.0;
    bool interior_ok = true;
    std::string failure;

    for (int i = 0; i < grid_count; ++i) {
        double s = 0.98 * b * (2.0 * i / (grid_count - 1) - 1.0);
        double m;
        try {
            auto j = phi.series(s, 2);
            double phiv = j.deriv(0), phip = j.deriv(1), phipp = j.deriv(2);
            double reg = (phiv - s * phip) + (b * b - s * s) * phipp;
            m = std::min(phiv, reg);
        } catch (const Error& e) {
            interior_ok = false;
            failure = e.what();
            worst_s = s;
            break;
        }
        if (m < margin) {
            margin = m;
            worst_s = s;
        }
        rep.n_samples++;
    }

    bool boundary_singular = false;
    double boundary_margin = std::numeric_limits<double>::infinity();
    if (interior_ok && margin > 0.0) {
        double phipp_mid = std::fabs(phi.series(0.0, 2).deriv(2));
        for (double sign : {-1.0, 1.0}) {
            double sb = sign * b * (1.0 - 1e-6);
            try {
                auto j = phi.series(sb, 2);
                double phiv = j.deriv(0), phip = j.deriv(1), phipp = j.deriv(2);
                double reg = (phiv - sb * phip) + (b * b - sb * sb) * phipp;
                boundary_margin = std::min(boundary_margin, std::min(phiv, reg));
                if (std::fabs(phipp) > 1e3 * (1.0 + phipp_mid)) boundary_singular = true;
            } catch (const Error&) {
                boundary_singular = true;
            }
        }
    }

    rep.scalars["margin"] = (interior_ok && std::isfinite(margin)) ? margin : -1.0;
    rep.scalars["boundary_margin"] = std::isfinite(boundary_margin) ? boundary_margin : -1.0;
    rep.witness_x = {worst_s};
    rep.residual = interior_ok ? -margin : 1.0;

    if (!interior_ok || margin <= 0.0) {
        rep.label = "irregular";
        rep.verdict = false;
        if (!failure.empty()) rep.notes.push_back(failure);
    } else if (boundary_singular || boundary_margin < 1e-4 * (1.0 + margin)) {
        rep.label = "almost-regular";
        rep.verdict = false;
        if (boundary_singular) rep.notes.push_back("derivative singularity at the extremal directions");
    } else {
        rep.label = "regular";
        rep.verdict = true;
    }
    return rep;
}

RandersFit randers_type_fit(const PhiFamily& phi, double b0) {
    const int N = 41;
    double smax = 0.9 * std::min(b0, 0.999 * phi.coverage());
    Vec s(N), f(N);
    for (int i = 0; i < N; ++i) {
        s[i] = smax * (2.0 * i / (N - 1) - 1.0);
        f[i] = phi.value(s[i]);
    }

    auto ls_residual = [&](double c2, RandersFit* out) {
        double uu = 0, us = 0, ssum = 0, uf = 0, sf = 0;
        Vec u(N);
        for (int i = 0; i < N; ++i) {
            double arg = 1.0 + c2 * s[i] * s[i];
            if (arg <= 0.0) return std::numeric_limits<double>::infinity();
            u[i] = std::sqrt(arg);
            uu += u[i] * u[i];
            us += u[i] * s[i];
            ssum += s[i] * s[i];
            uf += u[i] * f[i];
            sf += s[i] * f[i];
        }
        double det = uu * ssum - us * us;
        if (std::fabs(det) < 1e-14) return std::numeric_limits<double>::infinity();
        double c1 = (uf * ssum - sf * us) / det;
        double c3 = (uu * sf - us * uf) / det;
        double r = 0.0;
        for (int i = 0; i < N; ++i) r = std::max(r, std::fabs(c1 * u[i] + c3 * s[i] - f[i]));
        if (out) {
            out->c1 = c1;
            out->c2 = c2;
            out->c3 = c3;
            out->residual = r;
        }
        return r;
    };

    // coarse scan over both signs and zero, then golden-section refinement
    std::vector<double> candidates{0.0};
    double c2min = -(1.0 - 1e-9) / (smax * smax);
    for (int i = 0; i <= 40; ++i) {
        double mag = std::pow(10.0, -4.0 + 7.0 * i / 40.0);
        candidates.push_back(mag);
        if (-mag > c2min) candidates.push_back(-mag);
    }
    std::sort(candidates.begin(), candidates.end());
    std::size_t best = 0;
    double best_r = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        double r = ls_residual(candidates[i], nullptr);
        if (r < best_r) {
            best_r = r;
            best = i;
        }
    }
    double lo = (best == 0) ? candidates[0] - 1.0 : candidates[best - 1];
    double hi = (best + 1 == candidates.size()) ? candidates.back() + 1.0 : candidates[best + 1];
    lo = std::max(lo, c2min);

    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = lo, b = hi;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    double f1 = ls_residual(x1, nullptr), f2 = ls_residual(x2, nullptr);
    for (int it = 0; it < 90; ++it) {
        if (f1 < f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - gr * (b - a);
            f1 = ls_residual(x1, nullptr);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (b - a);
            f2 = ls_residual(x2, nullptr);
        }
    }
    RandersFit fit;
    double xbest = (f1 < f2) ? x1 : x2;
    if (ls_residual(xbest, &fit) > best_r) ls_residual(candidates[best], &fit);
    if (!std::isfinite(fit.residual)) fit.residual = std::numeric_limits<double>::infinity();
    return fit;
}

double ode_p_residual(const PhiFamily& phi, double k, int n, double b, int grid_count) {
    const auto* ode = dynamic_cast<const OdePhi*>(&phi);
    double cov = 0.9 * phi.coverage();
    double worst = 0.0;
    for (int i = 0; i < grid_count; ++i) {
        double s = cov * (2.0 * i / (grid_count - 1) - 1.0);
        double Q, Qp, Qpp, phiv;
        if (ode) {
            Vec u = ode->state_at(s);
            Vec du = ode->state_derivative_at(s);
            Q = u[0];
            Qp = u[1];
            phiv = u[2];
            Qpp = du[1];
        } else {
            QTPD q = q_theta_psi(phi, s, b);
            Q = q.Q;
            Qp = q.Qp;
            Qpp = q.Qpp;
            phiv = q.phi;
        }
        double tau = b * b - s * s;
        double delta = 1.0 + s * Q + tau * Qp;
        double lhs = -(Q - s * Qp) * (n * delta + 1.0 + s * Q) - tau * (1.0 + s * Q) * Qpp;
        double rhs = -2.0 * (n + 1) * k * phiv * delta * delta / tau;
        worst = std::max(worst, std::fabs(lhs - rhs) / std::max({1.0, std::fabs(lhs), std::fabs(rhs)}));
    }
    return worst;
}

}  // namespace finlab
