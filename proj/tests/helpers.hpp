#ifndef AMSUM_TESTS_HELPERS_HPP
#define AMSUM_TESTS_HELPERS_HPP

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "amsum/gradcheck.hpp"
#include "amsum/graph.hpp"
#include "amsum/rng.hpp"
#include "amsum/tensor.hpp"

namespace testutil {

inline std::filesystem::path temp_dir(const std::string& tag) {
    auto dir = std::filesystem::temp_directory_path() / ("amsum_test_" + tag);
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

inline double max_abs_diff(const amsum::Tensor2D& a, const amsum::Tensor2D& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return std::numeric_limits<double>::infinity();
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < a.raw().size(); ++i) {
        worst = std::max(worst, std::abs(a.raw()[i] - b.raw()[i]));
    }
    return worst;
}

inline amsum::Tensor2D random_tensor(int rows, int cols, amsum::Rng& rng, double lo = -1.0,
                                     double hi = 1.0) {
    amsum::Tensor2D t(rows, cols);
    for (double& v : t.raw()) v = rng.uniform(lo, hi);
    return t;
}

/// Reduces any tensor output to a scalar with fixed random weights so every
/// element influences the loss.
inline amsum::Var weighted_sum(amsum::Graph& g, amsum::Var out,
                               const amsum::Tensor2D& weights) {
    amsum::Var w = g.constant(weights);
    amsum::Var prod = g.mul(out, w);
    amsum::Var ones_left = g.constant(amsum::Tensor2D::filled(1, weights.rows(), 1.0));
    amsum::Var ones_right = g.constant(amsum::Tensor2D::filled(weights.cols(), 1, 1.0));
    return g.matmul(g.matmul(ones_left, prod), ones_right);
}

/// Runs finite_difference_check for a forward pass rebuilt from the record
/// values on every evaluation. `build` must create leaves in record order.
inline double graph_fd_check(
    std::vector<amsum::GradientRecord>& records,
    const std::function<amsum::Var(amsum::Graph&, const std::vector<amsum::Var>&)>& build,
    double step = 1e-5) {
    auto loss_fn = [&records, &build]() {
        amsum::Graph g;
        std::vector<amsum::Var> vars;
        vars.reserve(records.size());
        for (auto& r : records) vars.push_back(g.leaf(r.value));
        return g.value(build(g, vars)).at(0, 0);
    };
    {
        amsum::Graph g;
        std::vector<amsum::Var> vars;
        vars.reserve(records.size());
        for (auto& r : records) vars.push_back(g.leaf(r.value));
        amsum::Var loss = build(g, vars);
        g.backward(loss);
        for (std::size_t i = 0; i < records.size(); ++i) records[i].grad = g.grad(vars[i]);
    }
    return amsum::finite_difference_check(loss_fn, records, step);
}

/// Brute-force n-gram counter for the metric oracle: joins tokens with an
/// unlikely separator and counts by scanning, no shared code with metrics.
inline std::map<std::string, int> ngram_counts_oracle(const std::vector<std::string>& toks,
                                                      int n) {
    std::map<std::string, int> counts;
    if (n < 1 || static_cast<int>(toks.size()) < n) return counts;
    for (std::size_t i = 0; i + n <= toks.size(); ++i) {
        std::string key;
        for (int j = 0; j < n; ++j) key += toks[i + j] + "\x1f";
        ++counts[key];
    }
    return counts;
}

/// Quadratic-space LCS independent of the rolling-row implementation.
inline int lcs_oracle(const std::vector<std::string>& a, const std::vector<std::string>& b) {
    std::vector<std::vector<int>> dp(a.size() + 1, std::vector<int>(b.size() + 1, 0));
    for (std::size_t i = 1; i <= a.size(); ++i)
        for (std::size_t j = 1; j <= b.size(); ++j)
            dp[i][j] = a[i - 1] == b[j - 1] ? dp[i - 1][j - 1] + 1
                                            : std::max(dp[i - 1][j], dp[i][j - 1]);
    return dp[a.size()][b.size()];
}

inline std::vector<std::string> random_tokens(amsum::Rng& rng, int min_len, int max_len,
                                              int alphabet) {
    const int len = min_len + static_cast<int>(rng.below(
                                  static_cast<std::uint64_t>(max_len - min_len + 1)));
    std::vector<std::string> toks;
    toks.reserve(len);
    for (int i = 0; i < len; ++i)
        toks.push_back(std::string(1, static_cast<char>('a' + rng.below(alphabet))));
    return toks;
}

}  // namespace testutil

#endif  // AMSUM_TESTS_HELPERS_HPP
