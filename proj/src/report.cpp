#include "finlab/report.hpp"

namespace finlab {

std::string ClassifierReport::grade(double residual, double tol) {
    if (residual < tol) return "pass";
    if (residual > 100.0 * tol) return "fail";
    return "inconclusive";
}

void ClassifierReport::set_verdict(double residual_, double tol_) {
    residual = residual_;
    tol = tol_;
    label = grade(residual_, tol_);
    verdict = (label == "pass");
}

std::string ClassifierReport::summary() const {
    std::string s = predicate + ": " + label + " (residual " + fmt17(residual) + ", tol " +
                    fmt17(tol) + ", " + std::to_string(n_samples) + " samples";
    if (n_errors) s += ", " + std::to_string(n_errors) + " errors";
    s += ")";
    return s;
}

}  // namespace finlab
