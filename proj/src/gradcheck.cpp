#include "xmodal/gradcheck.hpp"

#include <cmath>

#include "xmodal/errors.hpp"

namespace xmodal {

std::vector<double> finite_diff_grad(const ScalarFn& f, std::span<const double> x, double h) {
    if (!(h > 0.0)) throw DomainError("finite_diff_grad: step h must be positive");
    std::vector<double> point(x.begin(), x.end());
    std::vector<double> grad(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double saved = point[i];
        point[i] = saved + h;
        const double fp = f(point);
        point[i] = saved - h;
        const double fm = f(point);
        point[i] = saved;
        if (!std::isfinite(fp) || !std::isfinite(fm)) {
            throw EvalError("finite_diff_grad: non-finite function value at coordinate " +
                            std::to_string(i));
        }
        grad[i] = (fp - fm) / (2.0 * h);
    }
    return grad;
}

double gradient_rel_error(std::span<const double> analytic, std::span<const double> numeric,
                          double floor) {
    if (analytic.size() != numeric.size()) {
        throw ShapeError("gradient_rel_error: length mismatch (" + std::to_string(analytic.size()) +
                         " vs " + std::to_string(numeric.size()) + ")");
    }
    double diff = 0.0, na = 0.0, nb = 0.0;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double d = analytic[i] - numeric[i];
        diff += d * d;
        na += analytic[i] * analytic[i];
        nb += numeric[i] * numeric[i];
    }
    const double denom = std::max({std::sqrt(na), std::sqrt(nb), floor});
    return std::sqrt(diff) / denom;
}

}  // namespace xmodal
