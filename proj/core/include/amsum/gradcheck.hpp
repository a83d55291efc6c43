#ifndef AMSUM_GRADCHECK_HPP
#define AMSUM_GRADCHECK_HPP

#include <functional>
#include <string>
#include <vector>

#include "amsum/tensor.hpp"

namespace amsum {

/// One named parameter with its analytic gradient. `grad` always has the
/// shape of `value` and is all zeros right after reset_grad().
struct GradientRecord {
    std::string param_id;
    Tensor2D value;
    Tensor2D grad;

    GradientRecord(std::string id, Tensor2D v)
        : param_id(std::move(id)), value(std::move(v)),
          grad(Tensor2D::zeros(value.rows(), value.cols())) {}

    void reset_grad() { grad.fill(0.0); }
};

/// Compares the analytic gradients stored in `records` against central
/// differences of `loss_fn`, which must read the parameters from the
/// records' `value` tensors (they are perturbed in place and restored).
/// Returns max over elements of |g_a - g_n| / max(|g_a|, |g_n|, 1e-8).
///
/// loss_fn is evaluated twice up front at the unperturbed point; any
/// mismatch raises DeterminismError.
double finite_difference_check(const std::function<double()>& loss_fn,
                               std::vector<GradientRecord>& records, double step = 1e-5);

}  // namespace amsum

#endif  // AMSUM_GRADCHECK_HPP
