#ifndef AMSUM_MODEL_HPP
#define AMSUM_MODEL_HPP

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "amsum/graph.hpp"
#include "amsum/tensor.hpp"

namespace amsum {

/// One LSTM cell. Gate blocks are stacked i, f, g, o along the 4*hidden axis.
struct LSTMCellParams {
    Tensor2D W;  // 4*hidden x input_dim
    Tensor2D U;  // 4*hidden x hidden
    Tensor2D b;  // 1 x 4*hidden
};

struct AttentionParams {
    Tensor2D W_h;  // attn_dim x enc_state_dim
    Tensor2D W_s;  // attn_dim x dec_state_dim
    Tensor2D v;    // 1 x attn_dim
    Tensor2D b;    // 1 x attn_dim
};

struct PointerParams {
    Tensor2D w_h;  // 1 x context_dim
    Tensor2D w_s;  // 1 x dec_state_dim
    Tensor2D w_x;  // 1 x dec_input_dim
    Tensor2D b;    // 1 x 1
};

struct ModelConfig {
    int vocab_size = 0;
    int emb_dim = 100;
    int hidden_dim = 128;
    int attn_dim = 128;
    // With the pointer head disabled the model is a plain attention seq2seq:
    // p_gen is pinned to 1 and training targets live in the base vocabulary.
    bool use_pointer = true;
    std::uint64_t seed = 1;

    int enc_state_dim() const { return 2 * hidden_dim; }
    // Decoder input is the previous token embedding concatenated with the
    // previous attention context.
    int dec_input_dim() const { return emb_dim + 2 * hidden_dim; }
    int out_feature_dim() const { return hidden_dim + 2 * hidden_dim; }
};

/// Every learnable weight of the network. Encoder is single-layer
/// bidirectional, decoder single-layer unidirectional with additive
/// attention; the final encoder states are reduced to the initial decoder
/// state through a tanh linear map.
struct ModelParams {
    ModelConfig config;
    Tensor2D embedding;  // vocab x emb_dim
    LSTMCellParams encoder_fwd;
    LSTMCellParams encoder_bwd;
    LSTMCellParams decoder;
    Tensor2D reduce_h_w;  // hidden x 2*hidden
    Tensor2D reduce_h_b;  // 1 x hidden
    Tensor2D reduce_c_w;  // hidden x 2*hidden
    Tensor2D reduce_c_b;  // 1 x hidden
    AttentionParams attention;
    PointerParams pointer;
    Tensor2D out_w;  // vocab x (hidden + 2*hidden)
    Tensor2D out_b;  // 1 x vocab
};

/// Seeded uniform(-0.1, 0.1) weights, zero biases, forget-gate bias +1.
ModelParams init_model(const ModelConfig& config);

/// Visits every parameter tensor in a fixed order shared by checkpoints,
/// the optimizer, and gradient checks.
void for_each_param(ModelParams& params,
                    const std::function<void(const std::string&, Tensor2D&)>& fn);
void for_each_param(const ModelParams& params,
                    const std::function<void(const std::string&, const Tensor2D&)>& fn);

/// Plain one-step cell: i,f,o = sigmoid, g = tanh of the stacked affine map;
/// c' = f*c + i*g; h' = o*tanh(c').
void lstm_step(const Tensor2D& x, const Tensor2D& h, const Tensor2D& c,
               const LSTMCellParams& params, Tensor2D& h_out, Tensor2D& c_out);

/// Text checkpoint holding the config header and every tensor by id; decimal
/// serialization round-trips doubles exactly.
void save_checkpoint(const ModelParams& params, const std::string& path);
ModelParams load_checkpoint(const std::string& path);

/// The network bound to a tape for one forward context. Encoding and any
/// number of decode steps extend the same tape; backward() through a loss
/// built on top yields gradients for all bound parameters.
class SummarizerGraph {
public:
    // track=false binds parameters as constants (inference only, no
    // gradient bookkeeping).
    SummarizerGraph(Graph& g, const ModelParams& params, bool track = true);

    struct Encoded {
        Var states;  // T x enc_state_dim; padded rows are zero
        Var proj;    // T x attn_dim: states * W_h^T, shared by all steps
        Var h0, c0;  // 1 x hidden: reduced initial decoder state
        std::vector<std::uint8_t> mask;
        int steps = 0;  // unpadded length
    };

    // mask empty = no padding. Padding must be trailing; the LSTMs run over
    // the unpadded prefix only and padded positions get zero states.
    Encoded encode(const std::vector<int>& encoder_ids,
                   std::vector<std::uint8_t> mask = {});

    struct Step {
        Var h, c;     // 1 x hidden
        Var context;  // 1 x enc_state_dim
    };
    Step initial_state(const Encoded& enc);

    struct StepOutput {
        Var p_vocab;  // 1 x vocab, sums to 1
        Var p_gen;    // 1 x 1 in [0,1]; constant 1 when the pointer is off
        Var alpha;    // 1 x T, sums to 1, exactly 0 on padding
        Step next;
    };

    // y_prev may be an extended id; anything outside the base vocabulary is
    // embedded as UNK.
    StepOutput decode_step(int y_prev, const Step& prev, const Encoded& enc);

    // Additive attention for an externally supplied decoder state row.
    std::pair<Var, Var> attention(Var dec_state, const Encoded& enc);

    // Mixture over vocab + n_oov extended slots. With the pointer disabled
    // returns p_vocab unchanged (base vocabulary only).
    Var final_distribution(const StepOutput& out, const std::vector<int>& extended_ids,
                           int n_oov);

    Graph& graph() { return graph_; }
    const ModelConfig& config() const { return config_; }
    const std::vector<std::pair<std::string, Var>>& bound_params() const { return bound_; }

private:
    struct BoundCell {
        Var W_t, U_t, b;  // weights pre-transposed for row-vector states
    };

    std::pair<Var, Var> lstm_cell(Var x, Var h, Var c, const BoundCell& cell);
    Var dot_row(Var a, Var w_t);  // (1 x n) . (n x 1) -> 1 x 1

    Graph& graph_;
    ModelConfig config_;
    std::vector<std::pair<std::string, Var>> bound_;

    Var embedding_;
    BoundCell enc_fwd_, enc_bwd_, dec_;
    Var reduce_h_wt_, reduce_h_b_, reduce_c_wt_, reduce_c_b_;
    Var attn_wh_t_, attn_ws_t_, attn_v_t_, attn_b_;
    Var ptr_wh_t_, ptr_ws_t_, ptr_wx_t_, ptr_b_;
    Var out_wt_, out_b_;
};

}  // namespace amsum

#endif  // AMSUM_MODEL_HPP
