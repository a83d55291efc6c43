#ifndef AMSUM_GRAPH_HPP
#define AMSUM_GRAPH_HPP

#include <cstdint>
#include <functional>
#include <vector>

#include "amsum/tensor.hpp"

namespace amsum {

class Graph;

/// Handle to a node on a Graph tape.
struct Var {
    int id = -1;
    bool valid() const { return id >= 0; }
};

/// Reverse-mode tape. Operations record their inputs and a backward closure;
/// backward() walks the tape once in reverse creation order, which is a
/// topological order by construction. A Graph is built per forward pass and
/// discarded after the gradients are read out.
///
/// Tensors entering the tape are immutable from then on; gradient
/// accumulation happens only inside backward() on the owning thread.
class Graph {
public:
    Graph() = default;
    Graph(const Graph&) = delete;
    Graph& operator=(const Graph&) = delete;

    // Tracked leaf (a parameter); gradients are accumulated into it.
    Var leaf(Tensor2D value);
    // Untracked leaf (data); no gradient is kept.
    Var constant(Tensor2D value);

    Var matmul(Var a, Var b);
    Var add(Var a, Var b);
    Var mul(Var a, Var b);
    Var sigmoid(Var a);
    Var tanh(Var a);
    Var scale(Var a, double k);
    Var transpose(Var a);

    // Horizontal concatenation of two row-compatible tensors.
    Var concat_cols(Var a, Var b);
    // Vertical stack; all parts must share a column count.
    Var concat_rows(const std::vector<Var>& parts);
    Var slice_cols(Var a, int begin, int len);
    // Row gather: out row k is a's row ids[k]. Backward scatters, so
    // duplicate ids accumulate.
    Var rows(Var a, std::vector<int> ids);
    // Each row of m plus the row vector r (explicit broadcast).
    Var add_row_broadcast(Var m, Var r);

    Var softmax_row(Var v);
    // Softmax over positions with keep[i] != 0; dropped positions get
    // exactly 0 mass and receive no gradient.
    Var masked_softmax_row(Var v, std::vector<std::uint8_t> keep);

    // Scalar -ln(dist[target] + kNllFloor); dist must be a valid 1 x n
    // distribution.
    Var nll(Var dist, int target);

    // Pointer-generator mixture over the extended vocabulary:
    //   out[w]              = p_gen * p_vocab[w]            for w < vocab
    //   out[extended_ids[t]] += (1 - p_gen) * alpha[t]      per position t
    // extended_ids maps each source position to its extended-vocabulary id;
    // slots >= vocab receive copy mass only.
    Var pointer_mixture(Var p_vocab, Var alpha, Var p_gen,
                        std::vector<int> extended_ids, int n_oov);

    const Tensor2D& value(Var v) const;
    // Valid after backward(); a node backward never reached reads as zeros.
    const Tensor2D& grad(Var v);

    // Seeds d(root)/d(root) = 1 and propagates. root must be 1 x 1.
    void backward(Var root);

    std::size_t size() const { return nodes_.size(); }

private:
    struct Node {
        Tensor2D value;
        Tensor2D grad;  // empty until first accumulation
        bool requires_grad = false;
        std::function<void(Graph&, int)> backward;
    };

    Var push(Tensor2D value, bool requires_grad, std::function<void(Graph&, int)> bw);
    Node& node(Var v);
    const Node& node(Var v) const;
    bool tracked(Var v) const { return node(v).requires_grad; }
    Tensor2D& grad_buf(int id);

    std::vector<Node> nodes_;
};

}  // namespace amsum

#endif  // AMSUM_GRAPH_HPP
