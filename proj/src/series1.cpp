#include "finlab/series1.hpp"

#include <algorithm>
#include <cmath>

#include "finlab/detail/univariate.hpp"

namespace finlab {

namespace {
int common_order(const Series1& a, const Series1& b) {
    return std::min(a.order(), b.order());
}
}  // namespace

Series1 Series1::variable(int order, double value) {
    Series1 s(order, value);
    if (order >= 1) s.c_[1] = 1.0;
    return s;
}

double Series1::deriv(int k) const {
    if (k > order()) throw PreconditionError("Series1 derivative order out of range");
    double f = 1.0;
    for (int t = 2; t <= k; ++t) f *= t;
    return c_[k] * f;
}

Series1 Series1::operator-() const {
    Series1 r = *this;
    for (double& v : r.c_) v = -v;
    return r;
}

Series1 operator+(const Series1& a, const Series1& b) {
    Series1 r(common_order(a, b));
    for (int k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
}

Series1 operator-(const Series1& a, const Series1& b) {
    Series1 r(common_order(a, b));
    for (int k = 0; k <= r.order(); ++k) r.c_[k] = a.c_[k] - b.c_[k];
    return r;
}

Series1 operator*(const Series1& a, const Series1& b) {
    Series1 r(common_order(a, b));
    for (int i = 0; i <= r.order(); ++i)
        for (int j = 0; i + j <= r.order(); ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    return r;
}

Series1 operator*(Series1 a, double b) {
    for (double& v : a.c_) v *= b;
    return a;
}

Series1 operator/(const Series1& a, const Series1& b) {
    int K = common_order(a, b);
    return a * b.compose(detail::uni_recip(b.value(), K));
}

Series1 operator/(double b, const Series1& a) {
    return a.compose(detail::uni_recip(a.value(), a.order())) * b;
}

Series1 Series1::compose(const std::vector<double>& d) const {
    Series1 u = *this;
    u.c_[0] = 0.0;
    const int K = static_cast<int>(d.size()) - 1;
    Series1 r(order(), d[std::min(K, order())]);
    for (int k = std::min(K, order()) - 1; k >= 0; --k) {
        r = r * u;
        r.c_[0] += d[k];
    }
    return r;
}

Series1 Series1::antiderivative() const {
    Series1 r(order() + 1);
    for (int k = 0; k <= order(); ++k) r.c_[k + 1] = c_[k] / (k + 1);
    return r;
}

Series1 Series1::derivative() const {
    if (order() == 0) return Series1(0);
    Series1 r(order() - 1);
    for (int k = 1; k <= order(); ++k) r.c_[k - 1] = c_[k] * k;
    return r;
}

double Series1::eval(double h) const {
    double r = c_[order()];
    for (int k = order() - 1; k >= 0; --k) r = r * h + c_[k];
    return r;
}

Series1 exp(const Series1& u) { return u.compose(detail::uni_exp(u.value(), u.order())); }
Series1 log(const Series1& u) { return u.compose(detail::uni_log(u.value(), u.order())); }
Series1 sqrt(const Series1& u) { return u.compose(detail::uni_sqrt(u.value(), u.order())); }
Series1 sin(const Series1& u) { return u.compose(detail::uni_sin(u.value(), u.order())); }
Series1 cos(const Series1& u) { return u.compose(detail::uni_cos(u.value(), u.order())); }
Series1 pow(const Series1& u, double p) { return u.compose(detail::uni_pow(u.value(), p, u.order())); }

Series1 pow(const Series1& u, int p) {
    if (p == 0) return Series1(u.order(), 1.0);
    bool neg = p < 0;
    int q = neg ? -p : p;
    Series1 acc = u;
    Series1 r(u.order(), 1.0);
    while (q > 0) {
        if (q & 1) r = r * acc;
        q >>= 1;
        if (q) acc = acc * acc;
    }
    if (neg) return 1.0 / r;
    return r;
}

}  // namespace finlab
