#ifndef AMSUM_TENSOR_HPP
#define AMSUM_TENSOR_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "amsum/errors.hpp"

namespace amsum {

/// Dense row-major matrix of doubles. The only tensor rank in the library;
/// vectors are 1 x n rows, scalars 1 x 1. Plain value semantics.
class Tensor2D {
public:
    Tensor2D() = default;
    Tensor2D(int rows, int cols);
    Tensor2D(int rows, int cols, std::vector<double> data);

    static Tensor2D zeros(int rows, int cols);
    static Tensor2D filled(int rows, int cols, double value);
    // 1 x n row vector from an initializer-style list.
    static Tensor2D row(std::vector<double> values);
    static Tensor2D identity(int n);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    std::size_t size() const { return data_.size(); }
    bool empty() const { return data_.empty(); }

    double& at(int r, int c) { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double at(int r, int c) const { return data_[static_cast<std::size_t>(r) * cols_ + c]; }
    double& operator[](std::size_t i) { return data_[i]; }
    double operator[](std::size_t i) const { return data_[i]; }

    double* data() { return data_.data(); }
    const double* data() const { return data_.data(); }
    std::vector<double>& raw() { return data_; }
    const std::vector<double>& raw() const { return data_; }

    bool same_shape(const Tensor2D& other) const {
        return rows_ == other.rows_ && cols_ == other.cols_;
    }
    std::string shape_str() const;

    void fill(double value);
    bool all_finite() const;
    // Largest |a - b| over elements; shapes must match.
    static double max_abs_diff(const Tensor2D& a, const Tensor2D& b);

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

// Plain (non-differentiable) tensor math. The graph in graph.hpp reuses
// these kernels for its forward passes.
Tensor2D matmul(const Tensor2D& a, const Tensor2D& b);
Tensor2D transpose(const Tensor2D& a);
Tensor2D add(const Tensor2D& a, const Tensor2D& b);
Tensor2D mul(const Tensor2D& a, const Tensor2D& b);
Tensor2D sigmoid(const Tensor2D& a);
Tensor2D tanh(const Tensor2D& a);

// Numerically stabilized softmax over a non-empty 1 x n row vector.
// Output is nonnegative and sums to 1; invariant under adding a constant.
Tensor2D softmax(const Tensor2D& v);

// Log floor used by nll_loss so a zero-probability target yields a large
// finite loss instead of infinity.
inline constexpr double kNllFloor = 1e-12;

// -ln(dist[target] + kNllFloor). dist must be a 1 x n distribution
// (sum within 1e-6 of 1); target must be in range.
double nll_loss(const Tensor2D& dist, int target);

double sigmoid_scalar(double x);

}  // namespace amsum

#endif  // AMSUM_TENSOR_HPP
