#pragma once

#include <map>
#include <string>
#include <vector>

#include "finlab/common.hpp"

namespace finlab {

/// Outcome of a residual-based predicate over a sample set.
///
/// Verdict policy: residual < tol -> "pass", residual > 100*tol -> "fail",
/// in between -> "inconclusive" (never silently rounded either way).
/// Domain-specific labels ("regular", "branch_a", "vanishing", ...) reuse the
/// same carrier with `verdict` meaning "the nominal property holds".
struct ClassifierReport {
    std::string predicate;
    double residual = 0.0;
    double tol = 0.0;
    bool verdict = false;
    std::string label;

    Vec witness_x, witness_y;  // sample of maximal residual

    std::map<std::string, double> scalars;  // extracted quantities (K, c, eps, b, ...)
    std::map<std::string, double> aux;      // auxiliary residuals
    std::vector<std::string> notes;

    int n_samples = 0;
    int n_errors = 0;

    /// Standard tri-state from a residual.
    static std::string grade(double residual, double tol);
    /// Fill residual/tol/verdict/label in one go.
    void set_verdict(double residual_, double tol_);

    std::string summary() const;
};

}  // namespace finlab
