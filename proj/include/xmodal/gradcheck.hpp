#pragma once

#include <functional>
#include <span>
#include <vector>

namespace xmodal {

using ScalarFn = std::function<double(std::span<const double>)>;

// Central-difference gradient: (f(x + h e_i) - f(x - h e_i)) / (2h) per
// coordinate. Throws EvalError if f returns a non-finite value.
std::vector<double> finite_diff_grad(const ScalarFn& f, std::span<const double> x, double h);

// Norm-relative disagreement between two gradient vectors:
// ||a - b|| / max(||a||, ||b||, floor). Used by the gradient oracle tests.
double gradient_rel_error(std::span<const double> analytic, std::span<const double> numeric,
                          double floor = 1e-8);

}  // namespace xmodal
