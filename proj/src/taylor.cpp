#include "finlab/taylor.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <tuple>

#include "finlab/detail/univariate.hpp"

namespace finlab {

namespace detail {

void GroupTable::build(int nvars_, int cap_) {
    nvars = nvars_;
    cap = cap_;
    if (nvars < 0 || nvars > 6) throw PreconditionError("jet space supports 0..6 variables per group");
    if (cap < 0 || cap > 12) throw PreconditionError("jet space supports group caps 0..12");

    // graded enumeration: degree 0..cap, compositions of each degree
    if (nvars == 0) {
        exps.push_back({});
    } else {
        std::vector<int> cur(nvars, 0);
        auto rec = [&](auto&& self, int pos, int rem) -> void {
            if (pos == nvars - 1) {
                cur[pos] = rem;
                exps.push_back(cur);
                return;
            }
            for (int v = rem; v >= 0; --v) {
                cur[pos] = v;
                self(self, pos + 1, rem - v);
            }
        };
        for (int deg = 0; deg <= cap; ++deg) rec(rec, 0, deg);
    }

    int radix = cap + 1;
    int codes = 1;
    for (int v = 0; v < nvars; ++v) codes *= radix;
    rank_of_code.assign(std::max(codes, 1), -1);
    factorial.resize(exps.size());
    degree.resize(exps.size());
    for (std::size_t r = 0; r < exps.size(); ++r) {
        double f = 1.0;
        int deg = 0;
        for (int v = 0; v < nvars; ++v) {
            for (int t = 2; t <= exps[r][v]; ++t) f *= t;
            deg += exps[r][v];
        }
        factorial[r] = f;
        degree[r] = deg;
        rank_of_code[code(exps[r])] = static_cast<int32_t>(r);
    }

    for (uint32_t i = 0; i < exps.size(); ++i) {
        for (uint32_t j = 0; j < exps.size(); ++j) {
            if (degree[i] + degree[j] > cap) continue;
            std::vector<int> s(nvars);
            for (int v = 0; v < nvars; ++v) s[v] = exps[i][v] + exps[j][v];
            int k = rank(s);
            triples.push_back({i, j, static_cast<uint32_t>(k)});
        }
    }
}

int GroupTable::code(const std::vector<int>& e) const {
    int radix = cap + 1;
    int c = 0;
    for (int v = nvars - 1; v >= 0; --v) c = c * radix + e[v];
    return c;
}

int GroupTable::rank(const std::vector<int>& e) const {
    if (static_cast<int>(e.size()) != nvars) throw PreconditionError("multi-index length mismatch");
    int deg = 0;
    for (int v : e) {
        if (v < 0) throw PreconditionError("negative derivative order");
        deg += v;
    }
    if (deg > cap) return -1;
    return rank_of_code[code(e)];
}

}  // namespace detail

std::shared_ptr<const JetSpace> JetSpace::get(int nx, int ny, int capx, int capy) {
    static std::mutex mu;
    static std::map<std::tuple<int, int, int, int>, std::shared_ptr<const JetSpace>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto key = std::make_tuple(nx, ny, capx, capy);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto sp = std::shared_ptr<JetSpace>(new JetSpace());
    sp->x_.build(nx, capx);
    sp->y_.build(ny, capy);
    cache[key] = sp;
    return sp;
}

int JetSpace::flat(const std::vector<int>& kx, const std::vector<int>& ky) const {
    int rx = x_.rank(kx);
    int ry = y_.rank(ky);
    if (rx < 0 || ry < 0) return -1;
    return rx * static_cast<int>(y_.exps.size()) + ry;
}

TaylorScalar::TaylorScalar(JetSpacePtr sp, double constant)
    : sp_(std::move(sp)), c_(sp_->size(), 0.0), validx_(sp_->capx()), validy_(sp_->capy()) {
    c_[0] = constant;
}

TaylorScalar TaylorScalar::variable(JetSpacePtr sp, int v, double value) {
    TaylorScalar t(sp, value);
    const auto& xg = sp->xg();
    const auto& yg = sp->yg();
    // a cap-0 group truncates the perturbation away: the variable is a constant
    if (v < xg.nvars) {
        if (xg.cap == 0) return t;
        std::vector<int> e(xg.nvars, 0);
        e[v] = 1;
        t.c_[static_cast<std::size_t>(xg.rank(e)) * yg.exps.size()] = 1.0;
    } else {
        v -= xg.nvars;
        if (v >= yg.nvars) throw PreconditionError("variable index out of range");
        if (yg.cap == 0) return t;
        std::vector<int> e(yg.nvars, 0);
        e[v] = 1;
        t.c_[static_cast<std::size_t>(yg.rank(e))] = 1.0;
    }
    return t;
}

void TaylorScalar::check_same(const TaylorScalar& o) const {
    if (sp_ != o.sp_) throw PreconditionError("TaylorScalar operands live in different jet spaces");
}

double TaylorScalar::deriv(const std::vector<int>& kx, const std::vector<int>& ky) const {
    int degx = 0, degy = 0;
    for (int v : kx) degx += v;
    for (int v : ky) degy += v;
    if (degx > validx_ || degy > validy_)
        throw PreconditionError("derivative order exceeds the valid range of this jet");
    int f = sp_->flat(kx, ky);
    int rx = sp_->xg().rank(kx);
    int ry = sp_->yg().rank(ky);
    return c_[f] * sp_->xg().factorial[rx] * sp_->yg().factorial[ry];
}

TaylorScalar TaylorScalar::shift(const std::vector<int>& kx, const std::vector<int>& ky) const {
    const auto& xg = sp_->xg();
    const auto& yg = sp_->yg();
    int degx = 0, degy = 0;
    for (int v : kx) degx += v;
    for (int v : ky) degy += v;
    if (degx > validx_ || degy > validy_)
        throw PreconditionError("shift order exceeds the valid range of this jet");

    TaylorScalar out(sp_, 0.0);
    out.validx_ = validx_ - degx;
    out.validy_ = validy_ - degy;
    const int NY = static_cast<int>(yg.exps.size());
    std::vector<int> sx(xg.nvars), sy(yg.nvars);
    for (std::size_t rx = 0; rx < xg.exps.size(); ++rx) {
        bool okx = true;
        for (int v = 0; v < xg.nvars; ++v) {
            sx[v] = xg.exps[rx][v] + kx[v];
            if (sx[v] > xg.cap) okx = false;
        }
        int srx = okx ? xg.rank(sx) : -1;
        if (srx < 0) continue;
        double fx = xg.factorial[srx] / xg.factorial[rx];
        for (std::size_t ry = 0; ry < yg.exps.size(); ++ry) {
            bool oky = true;
            for (int v = 0; v < yg.nvars; ++v) {
                sy[v] = yg.exps[ry][v] + ky[v];
                if (sy[v] > yg.cap) oky = false;
            }
            int sry = oky ? yg.rank(sy) : -1;
            if (sry < 0) continue;
            double fy = yg.factorial[sry] / yg.factorial[ry];
            out.c_[rx * NY + ry] = c_[static_cast<std::size_t>(srx) * NY + sry] * fx * fy;
        }
    }
    return out;
}

TaylorScalar& TaylorScalar::restrict_valid(int vx, int vy) {
    validx_ = std::min(validx_, vx);
    validy_ = std::min(validy_, vy);
    return *this;
}

TaylorScalar TaylorScalar::operator-() const {
    TaylorScalar r = *this;
    for (double& v : r.c_) v = -v;
    return r;
}

TaylorScalar& TaylorScalar::operator+=(const TaylorScalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    validx_ = std::min(validx_, o.validx_);
    validy_ = std::min(validy_, o.validy_);
    return *this;
}

TaylorScalar& TaylorScalar::operator-=(const TaylorScalar& o) {
    check_same(o);
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    validx_ = std::min(validx_, o.validx_);
    validy_ = std::min(validy_, o.validy_);
    return *this;
}

TaylorScalar& TaylorScalar::operator+=(double a) {
    c_[0] += a;
    return *this;
}
TaylorScalar& TaylorScalar::operator-=(double a) {
    c_[0] -= a;
    return *this;
}
TaylorScalar& TaylorScalar::operator*=(double a) {
    for (double& v : c_) v *= a;
    return *this;
}

TaylorScalar TaylorScalar::mul(const TaylorScalar& a, const TaylorScalar& b) {
    a.check_same(b);
    const auto& xg = a.sp_->xg();
    const auto& yg = a.sp_->yg();
    const int NY = static_cast<int>(yg.exps.size());
    TaylorScalar out(a.sp_, 0.0);
    out.validx_ = std::min(a.validx_, b.validx_);
    out.validy_ = std::min(a.validy_, b.validy_);
    const double* pa = a.c_.data();
    const double* pb = b.c_.data();
    double* pc = out.c_.data();
    for (const auto& tx : xg.triples) {
        const double* ra = pa + static_cast<std::size_t>(tx.i) * NY;
        const double* rb = pb + static_cast<std::size_t>(tx.j) * NY;
        double* rc = pc + static_cast<std::size_t>(tx.k) * NY;
        for (const auto& ty : yg.triples) {
            rc[ty.k] += ra[ty.i] * rb[ty.j];
        }
    }
    return out;
}

TaylorScalar TaylorScalar::compose(const std::vector<double>& d) const {
    const int K = static_cast<int>(d.size()) - 1;
    TaylorScalar u = *this;
    u.c_[0] = 0.0;  // nilpotent part
    TaylorScalar r(sp_, d[K]);
    r.validx_ = validx_;
    r.validy_ = validy_;
    for (int k = K - 1; k >= 0; --k) {
        r = mul(r, u);
        r.c_[0] += d[k];
    }
    return r;
}

TaylorScalar operator/(const TaylorScalar& a, const TaylorScalar& b) {
    int K = b.space()->capx() + b.space()->capy();
    return TaylorScalar::mul(a, b.compose(detail::uni_recip(b.value(), K)));
}

TaylorScalar operator/(double a, const TaylorScalar& b) {
    int K = b.space()->capx() + b.space()->capy();
    TaylorScalar r = b.compose(detail::uni_recip(b.value(), K));
    return r *= a;
}

#define FINLAB_TAYLOR_FN(name, gen)                                    \
    TaylorScalar name(const TaylorScalar& u) {                         \
        int K = u.space()->capx() + u.space()->capy();                 \
        return u.compose(detail::gen(u.value(), K));                   \
    }

FINLAB_TAYLOR_FN(exp, uni_exp)
FINLAB_TAYLOR_FN(log, uni_log)
FINLAB_TAYLOR_FN(sqrt, uni_sqrt)
FINLAB_TAYLOR_FN(sin, uni_sin)
FINLAB_TAYLOR_FN(cos, uni_cos)
FINLAB_TAYLOR_FN(abs, uni_abs)
#undef FINLAB_TAYLOR_FN

TaylorScalar pow(const TaylorScalar& u, int p) {
    if (p == 0) return TaylorScalar::constant(u.space(), 1.0);
    bool neg = p < 0;
    int q = neg ? -p : p;
    TaylorScalar acc = u;
    TaylorScalar result = TaylorScalar::constant(u.space(), 1.0);
    result.restrict_valid(u.valid_x(), u.valid_y());
    while (q > 0) {
        if (q & 1) result = TaylorScalar::mul(result, acc);
        q >>= 1;
        if (q) acc = TaylorScalar::mul(acc, acc);
    }
    if (neg) return 1.0 / result;
    return result;
}

TaylorScalar pow(const TaylorScalar& u, double p) {
    double ip;
    if (std::modf(p, &ip) == 0.0 && std::fabs(ip) <= 64) return pow(u, static_cast<int>(ip));
    int K = u.space()->capx() + u.space()->capy();
    return u.compose(detail::uni_pow(u.value(), p, K));
}

}  // namespace finlab
