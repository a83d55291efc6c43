#include "amsum/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace amsum {

namespace {

std::size_t checked_extent(int rows, int cols) {
    if (rows <= 0 || cols <= 0) {
        std::ostringstream os;
        os << "Tensor2D: non-positive shape " << rows << "x" << cols;
        throw DimensionError(os.str());
    }
    return static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols);
}

}  // namespace

Tensor2D::Tensor2D(int rows, int cols)
    : rows_(rows), cols_(cols), data_(checked_extent(rows, cols), 0.0) {}

Tensor2D::Tensor2D(int rows, int cols, std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != checked_extent(rows, cols)) {
        std::ostringstream os;
        os << "Tensor2D: data length " << data_.size() << " does not match shape " << shape_str();
        throw DimensionError(os.str());
    }
}

Tensor2D Tensor2D::zeros(int rows, int cols) { return Tensor2D(rows, cols); }

Tensor2D Tensor2D::filled(int rows, int cols, double value) {
    Tensor2D t(rows, cols);
    t.fill(value);
    return t;
}

Tensor2D Tensor2D::row(std::vector<double> values) {
    const int n = static_cast<int>(values.size());
    return Tensor2D(1, n, std::move(values));
}

Tensor2D Tensor2D::identity(int n) {
    Tensor2D t(n, n);
    for (int i = 0; i < n; ++i) t.at(i, i) = 1.0;
    return t;
}

std::string Tensor2D::shape_str() const {
    std::ostringstream os;
    os << rows_ << "x" << cols_;
    return os.str();
}

void Tensor2D::fill(double value) { std::fill(data_.begin(), data_.end(), value); }

bool Tensor2D::all_finite() const {
    for (double v : data_) {
        if (!std::isfinite(v)) return false;
    }
    return true;
}

double Tensor2D::max_abs_diff(const Tensor2D& a, const Tensor2D& b) {
    if (!a.same_shape(b)) {
        throw DimensionError("max_abs_diff: shape " + a.shape_str() + " vs " + b.shape_str());
    }
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

Tensor2D matmul(const Tensor2D& a, const Tensor2D& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("matmul: " + a.shape_str() + " vs " + b.shape_str());
    }
    Tensor2D out(a.rows(), b.cols());
    const int n = a.rows(), k = a.cols(), m = b.cols();
    for (int i = 0; i < n; ++i) {
        const double* arow = a.data() + static_cast<std::size_t>(i) * k;
        double* orow = out.data() + static_cast<std::size_t>(i) * m;
        for (int p = 0; p < k; ++p) {
            const double av = arow[p];
            if (av == 0.0) continue;
            const double* brow = b.data() + static_cast<std::size_t>(p) * m;
            for (int j = 0; j < m; ++j) orow[j] += av * brow[j];
        }
    }
    return out;
}

Tensor2D transpose(const Tensor2D& a) {
    Tensor2D out(a.cols(), a.rows());
    for (int i = 0; i < a.rows(); ++i) {
        for (int j = 0; j < a.cols(); ++j) out.at(j, i) = a.at(i, j);
    }
    return out;
}

static void require_same_shape(const Tensor2D& a, const Tensor2D& b, const char* op) {
    if (!a.same_shape(b)) {
        throw DimensionError(std::string(op) + ": shape " + a.shape_str() + " vs " + b.shape_str());
    }
}

Tensor2D add(const Tensor2D& a, const Tensor2D& b) {
    require_same_shape(a, b, "add");
    Tensor2D out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += b[i];
    return out;
}

Tensor2D mul(const Tensor2D& a, const Tensor2D& b) {
    require_same_shape(a, b, "mul");
    Tensor2D out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] *= b[i];
    return out;
}

double sigmoid_scalar(double x) {
    // Split on sign so exp never overflows.
    if (x >= 0.0) return 1.0 / (1.0 + std::exp(-x));
    const double e = std::exp(x);
    return e / (1.0 + e);
}

Tensor2D sigmoid(const Tensor2D& a) {
    Tensor2D out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = sigmoid_scalar(out[i]);
    return out;
}

Tensor2D tanh(const Tensor2D& a) {
    Tensor2D out = a;
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::tanh(out[i]);
    return out;
}

Tensor2D softmax(const Tensor2D& v) {
    if (v.empty()) throw ArgumentError("softmax: empty input");
    if (v.rows() != 1) throw DimensionError("softmax: expected row vector, got " + v.shape_str());
    Tensor2D out = v;
    const double m = *std::max_element(out.raw().begin(), out.raw().end());
    double sum = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = std::exp(out[i] - m);
        sum += out[i];
    }
    for (std::size_t i = 0; i < out.size(); ++i) out[i] /= sum;
    return out;
}

double nll_loss(const Tensor2D& dist, int target) {
    if (dist.rows() != 1) {
        throw DimensionError("nll_loss: expected row vector, got " + dist.shape_str());
    }
    if (target < 0 || target >= dist.cols()) {
        std::ostringstream os;
        os << "nll_loss: target " << target << " out of range for distribution of length "
           << dist.cols();
        throw IndexError(os.str());
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < dist.size(); ++i) sum += dist[i];
    if (std::abs(sum - 1.0) > 1e-6) {
        std::ostringstream os;
        os << "nll_loss: distribution sums to " << sum;
        throw ArgumentError(os.str());
    }
    return -std::log(dist[static_cast<std::size_t>(target)] + kNllFloor);
}

}  // namespace amsum
