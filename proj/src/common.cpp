#include "finlab/common.hpp"

#include <cmath>
#include <cstdio>

namespace finlab {

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string point_str(VecView x) {
    std::string s = "(";
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (i) s += ", ";
        s += fmt17(x[i]);
    }
    return s + ")";
}

std::string point_str(VecView x, VecView y) {
    return "x=" + point_str(x) + ", y=" + point_str(y);
}

bool close_rel(double a, double b, double tol) {
    return rel_err(a, b) <= tol;
}

double rel_err(double a, double b) {
    double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
    return std::fabs(a - b) / scale;
}

}  // namespace finlab
