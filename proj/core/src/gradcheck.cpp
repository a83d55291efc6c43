#include "amsum/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "amsum/errors.hpp"

namespace amsum {

double finite_difference_check(const std::function<double()>& loss_fn,
                               std::vector<GradientRecord>& records, double step) {
    if (step <= 0.0) throw ArgumentError("finite_difference_check: step must be positive");
    const double l0 = loss_fn();
    const double l1 = loss_fn();
    if (l0 != l1) {
        std::ostringstream os;
        os << "finite_difference_check: loss function is not deterministic (" << l0 << " vs "
           << l1 << ")";
        throw DeterminismError(os.str());
    }
    double max_rel = 0.0;
    for (GradientRecord& rec : records) {
        if (!rec.grad.same_shape(rec.value)) {
            throw DimensionError("finite_difference_check: gradient shape " +
                                 rec.grad.shape_str() + " vs value " + rec.value.shape_str() +
                                 " for " + rec.param_id);
        }
        for (std::size_t i = 0; i < rec.value.size(); ++i) {
            const double saved = rec.value[i];
            rec.value[i] = saved + step;
            const double lp = loss_fn();
            rec.value[i] = saved - step;
            const double lm = loss_fn();
            rec.value[i] = saved;
            const double numeric = (lp - lm) / (2.0 * step);
            const double analytic = rec.grad[i];
            const double denom = std::max({std::abs(analytic), std::abs(numeric), 1e-8});
            max_rel = std::max(max_rel, std::abs(analytic - numeric) / denom);
        }
    }
    return max_rel;
}

}  // namespace amsum
