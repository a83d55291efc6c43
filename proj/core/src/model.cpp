#include "amsum/model.hpp"

#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include "amsum/errors.hpp"
#include "amsum/rng.hpp"
#include "amsum/vocab.hpp"

namespace amsum {

namespace {

void check_config(const ModelConfig& c) {
    if (c.vocab_size <= kNumReserved)
        throw ConfigError("model vocab_size must exceed the " +
                          std::to_string(kNumReserved) + " reserved ids, got " +
                          std::to_string(c.vocab_size));
    if (c.emb_dim <= 0 || c.hidden_dim <= 0 || c.attn_dim <= 0)
        throw ConfigError("model dimensions must be positive");
}

ModelParams zero_params(const ModelConfig& c) {
    ModelParams p;
    p.config = c;
    const int h = c.hidden_dim;
    p.embedding = Tensor2D::zeros(c.vocab_size, c.emb_dim);
    p.encoder_fwd = {Tensor2D::zeros(4 * h, c.emb_dim), Tensor2D::zeros(4 * h, h),
                     Tensor2D::zeros(1, 4 * h)};
    p.encoder_bwd = p.encoder_fwd;
    p.decoder = {Tensor2D::zeros(4 * h, c.dec_input_dim()), Tensor2D::zeros(4 * h, h),
                 Tensor2D::zeros(1, 4 * h)};
    p.reduce_h_w = Tensor2D::zeros(h, 2 * h);
    p.reduce_h_b = Tensor2D::zeros(1, h);
    p.reduce_c_w = p.reduce_h_w;
    p.reduce_c_b = p.reduce_h_b;
    p.attention = {Tensor2D::zeros(c.attn_dim, c.enc_state_dim()),
                   Tensor2D::zeros(c.attn_dim, h), Tensor2D::zeros(1, c.attn_dim),
                   Tensor2D::zeros(1, c.attn_dim)};
    p.pointer = {Tensor2D::zeros(1, c.enc_state_dim()), Tensor2D::zeros(1, h),
                 Tensor2D::zeros(1, c.dec_input_dim()), Tensor2D::zeros(1, 1)};
    p.out_w = Tensor2D::zeros(c.vocab_size, c.out_feature_dim());
    p.out_b = Tensor2D::zeros(1, c.vocab_size);
    return p;
}

void fill_uniform(Tensor2D& t, Rng& rng) {
    for (double& v : t.raw()) v = rng.uniform(-0.1, 0.1);
}

void set_forget_bias(Tensor2D& b, int hidden, double value) {
    for (int j = hidden; j < 2 * hidden; ++j) b.at(0, j) = value;
}

}  // namespace

ModelParams init_model(const ModelConfig& config) {
    check_config(config);
    ModelParams p = zero_params(config);
    Rng rng(config.seed);
    fill_uniform(p.embedding, rng);
    for (LSTMCellParams* cell : {&p.encoder_fwd, &p.encoder_bwd, &p.decoder}) {
        fill_uniform(cell->W, rng);
        fill_uniform(cell->U, rng);
        set_forget_bias(cell->b, config.hidden_dim, 1.0);
    }
    fill_uniform(p.reduce_h_w, rng);
    fill_uniform(p.reduce_c_w, rng);
    fill_uniform(p.attention.W_h, rng);
    fill_uniform(p.attention.W_s, rng);
    fill_uniform(p.attention.v, rng);
    fill_uniform(p.pointer.w_h, rng);
    fill_uniform(p.pointer.w_s, rng);
    fill_uniform(p.pointer.w_x, rng);
    fill_uniform(p.out_w, rng);
    return p;
}

void for_each_param(ModelParams& params,
                    const std::function<void(const std::string&, Tensor2D&)>& fn) {
    fn("embedding", params.embedding);
    fn("encoder_fwd.W", params.encoder_fwd.W);
    fn("encoder_fwd.U", params.encoder_fwd.U);
    fn("encoder_fwd.b", params.encoder_fwd.b);
    fn("encoder_bwd.W", params.encoder_bwd.W);
    fn("encoder_bwd.U", params.encoder_bwd.U);
    fn("encoder_bwd.b", params.encoder_bwd.b);
    fn("decoder.W", params.decoder.W);
    fn("decoder.U", params.decoder.U);
    fn("decoder.b", params.decoder.b);
    fn("reduce_h.W", params.reduce_h_w);
    fn("reduce_h.b", params.reduce_h_b);
    fn("reduce_c.W", params.reduce_c_w);
    fn("reduce_c.b", params.reduce_c_b);
    fn("attention.W_h", params.attention.W_h);
    fn("attention.W_s", params.attention.W_s);
    fn("attention.v", params.attention.v);
    fn("attention.b", params.attention.b);
    fn("pointer.w_h", params.pointer.w_h);
    fn("pointer.w_s", params.pointer.w_s);
    fn("pointer.w_x", params.pointer.w_x);
    fn("pointer.b", params.pointer.b);
    fn("out.W", params.out_w);
    fn("out.b", params.out_b);
}

void for_each_param(const ModelParams& params,
                    const std::function<void(const std::string&, const Tensor2D&)>& fn) {
    for_each_param(const_cast<ModelParams&>(params),
                   [&fn](const std::string& name, Tensor2D& t) { fn(name, t); });
}

void lstm_step(const Tensor2D& x, const Tensor2D& h, const Tensor2D& c,
               const LSTMCellParams& params, Tensor2D& h_out, Tensor2D& c_out) {
    const int hidden = params.U.cols();
    if (params.W.rows() != 4 * hidden || params.U.rows() != 4 * hidden ||
        params.b.cols() != 4 * hidden)
        throw DimensionError("lstm cell parameter shapes disagree");
    if (x.rows() != 1 || h.rows() != 1 || c.rows() != 1)
        throw DimensionError("lstm_step expects row vectors");
    if (x.cols() != params.W.cols())
        throw DimensionError("lstm input width " + std::to_string(x.cols()) +
                             " does not match W cols " + std::to_string(params.W.cols()));
    if (h.cols() != hidden || c.cols() != hidden)
        throw DimensionError("lstm state width does not match cell hidden size");

    Tensor2D z = Tensor2D::zeros(1, 4 * hidden);
    for (int r = 0; r < 4 * hidden; ++r) {
        double acc = params.b.at(0, r);
        for (int k = 0; k < x.cols(); ++k) acc += params.W.at(r, k) * x.at(0, k);
        for (int k = 0; k < hidden; ++k) acc += params.U.at(r, k) * h.at(0, k);
        z.at(0, r) = acc;
    }
    h_out = Tensor2D::zeros(1, hidden);
    c_out = Tensor2D::zeros(1, hidden);
    for (int j = 0; j < hidden; ++j) {
        const double i = sigmoid_scalar(z.at(0, j));
        const double f = sigmoid_scalar(z.at(0, hidden + j));
        const double g = std::tanh(z.at(0, 2 * hidden + j));
        const double o = sigmoid_scalar(z.at(0, 3 * hidden + j));
        const double cn = f * c.at(0, j) + i * g;
        c_out.at(0, j) = cn;
        h_out.at(0, j) = o * std::tanh(cn);
    }
}

SummarizerGraph::SummarizerGraph(Graph& g, const ModelParams& params, bool track)
    : graph_(g), config_(params.config) {
    check_config(config_);
    std::map<std::string, Var> by_name;
    for_each_param(params, [&](const std::string& name, const Tensor2D& t) {
        Var v = track ? graph_.leaf(t) : graph_.constant(t);
        bound_.emplace_back(name, v);
        by_name[name] = v;
    });
    auto raw = [&](const std::string& name) { return by_name.at(name); };
    auto t = [&](const std::string& name) { return graph_.transpose(by_name.at(name)); };

    embedding_ = raw("embedding");
    enc_fwd_ = {t("encoder_fwd.W"), t("encoder_fwd.U"), raw("encoder_fwd.b")};
    enc_bwd_ = {t("encoder_bwd.W"), t("encoder_bwd.U"), raw("encoder_bwd.b")};
    dec_ = {t("decoder.W"), t("decoder.U"), raw("decoder.b")};
    reduce_h_wt_ = t("reduce_h.W");
    reduce_h_b_ = raw("reduce_h.b");
    reduce_c_wt_ = t("reduce_c.W");
    reduce_c_b_ = raw("reduce_c.b");
    attn_wh_t_ = t("attention.W_h");
    attn_ws_t_ = t("attention.W_s");
    attn_v_t_ = t("attention.v");
    attn_b_ = raw("attention.b");
    ptr_wh_t_ = t("pointer.w_h");
    ptr_ws_t_ = t("pointer.w_s");
    ptr_wx_t_ = t("pointer.w_x");
    ptr_b_ = raw("pointer.b");
    out_wt_ = t("out.W");
    out_b_ = raw("out.b");
}

std::pair<Var, Var> SummarizerGraph::lstm_cell(Var x, Var h, Var c, const BoundCell& cell) {
    const int hidden = config_.hidden_dim;
    Var z = graph_.add(graph_.add(graph_.matmul(x, cell.W_t), graph_.matmul(h, cell.U_t)),
                       cell.b);
    Var i = graph_.sigmoid(graph_.slice_cols(z, 0, hidden));
    Var f = graph_.sigmoid(graph_.slice_cols(z, hidden, hidden));
    Var g = graph_.tanh(graph_.slice_cols(z, 2 * hidden, hidden));
    Var o = graph_.sigmoid(graph_.slice_cols(z, 3 * hidden, hidden));
    Var c_next = graph_.add(graph_.mul(f, c), graph_.mul(i, g));
    Var h_next = graph_.mul(o, graph_.tanh(c_next));
    return {h_next, c_next};
}

Var SummarizerGraph::dot_row(Var a, Var w_t) { return graph_.matmul(a, w_t); }

SummarizerGraph::Encoded SummarizerGraph::encode(const std::vector<int>& encoder_ids,
                                                 std::vector<std::uint8_t> mask) {
    const int total = static_cast<int>(encoder_ids.size());
    if (total == 0) throw ArgumentError("encode needs at least one encoder id");
    if (mask.empty()) mask.assign(encoder_ids.size(), 1);
    if (mask.size() != encoder_ids.size())
        throw DimensionError("encoder mask length does not match ids");
    int steps = 0;
    while (steps < total && mask[steps]) ++steps;
    for (int t = steps; t < total; ++t)
        if (mask[t]) throw ArgumentError("encoder mask must have trailing padding only");
    if (steps == 0) throw ArgumentError("encoder mask drops every position");
    for (int id : encoder_ids)
        if (id < 0 || id >= config_.vocab_size)
            throw IndexError("encoder id " + std::to_string(id) +
                             " outside vocabulary of size " +
                             std::to_string(config_.vocab_size));

    const int hidden = config_.hidden_dim;
    Var zero_state = graph_.constant(Tensor2D::zeros(1, hidden));

    std::vector<Var> h_fwd(steps), c_fwd(steps), h_bwd(steps), c_bwd(steps);
    Var h = zero_state, c = zero_state;
    for (int t = 0; t < steps; ++t) {
        Var x = graph_.rows(embedding_, {encoder_ids[t]});
        std::tie(h, c) = lstm_cell(x, h, c, enc_fwd_);
        h_fwd[t] = h;
        c_fwd[t] = c;
    }
    h = zero_state;
    c = zero_state;
    for (int t = steps - 1; t >= 0; --t) {
        Var x = graph_.rows(embedding_, {encoder_ids[t]});
        std::tie(h, c) = lstm_cell(x, h, c, enc_bwd_);
        h_bwd[t] = h;
        c_bwd[t] = c;
    }

    std::vector<Var> state_rows;
    state_rows.reserve(encoder_ids.size());
    for (int t = 0; t < steps; ++t)
        state_rows.push_back(graph_.concat_cols(h_fwd[t], h_bwd[t]));
    Var zero_row;
    for (int t = steps; t < total; ++t) {
        if (zero_row.id < 0)
            zero_row = graph_.constant(Tensor2D::zeros(1, config_.enc_state_dim()));
        state_rows.push_back(zero_row);
    }

    Encoded enc;
    enc.states = state_rows.size() == 1 ? state_rows[0] : graph_.concat_rows(state_rows);
    enc.proj = graph_.matmul(enc.states, attn_wh_t_);
    Var final_h = graph_.concat_cols(h_fwd[steps - 1], h_bwd[0]);
    Var final_c = graph_.concat_cols(c_fwd[steps - 1], c_bwd[0]);
    enc.h0 = graph_.tanh(graph_.add(graph_.matmul(final_h, reduce_h_wt_), reduce_h_b_));
    enc.c0 = graph_.tanh(graph_.add(graph_.matmul(final_c, reduce_c_wt_), reduce_c_b_));
    enc.mask = std::move(mask);
    enc.steps = steps;
    return enc;
}

SummarizerGraph::Step SummarizerGraph::initial_state(const Encoded& enc) {
    return {enc.h0, enc.c0,
            graph_.constant(Tensor2D::zeros(1, config_.enc_state_dim()))};
}

std::pair<Var, Var> SummarizerGraph::attention(Var dec_state, const Encoded& enc) {
    Var query = graph_.add(graph_.matmul(dec_state, attn_ws_t_), attn_b_);
    Var scores_in = graph_.tanh(graph_.add_row_broadcast(enc.proj, query));
    Var e = graph_.transpose(graph_.matmul(scores_in, attn_v_t_));  // 1 x T
    Var alpha = graph_.masked_softmax_row(e, enc.mask);
    Var context = graph_.matmul(alpha, enc.states);
    return {alpha, context};
}

SummarizerGraph::StepOutput SummarizerGraph::decode_step(int y_prev, const Step& prev,
                                                         const Encoded& enc) {
    if (y_prev < 0) throw IndexError("decoder input id must be non-negative");
    const int base = y_prev < config_.vocab_size ? y_prev : kUnkId;
    Var emb = graph_.rows(embedding_, {base});
    Var x = graph_.concat_cols(emb, prev.context);
    auto [h_next, c_next] = lstm_cell(x, prev.h, prev.c, dec_);
    auto [alpha, context] = attention(h_next, enc);

    Var feat = graph_.concat_cols(h_next, context);
    Var logits = graph_.add(graph_.matmul(feat, out_wt_), out_b_);
    Var p_vocab = graph_.softmax_row(logits);

    Var p_gen;
    if (config_.use_pointer) {
        Var s = graph_.add(graph_.add(dot_row(context, ptr_wh_t_), dot_row(h_next, ptr_ws_t_)),
                           graph_.add(dot_row(x, ptr_wx_t_), ptr_b_));
        p_gen = graph_.sigmoid(s);
    } else {
        p_gen = graph_.constant(Tensor2D::filled(1, 1, 1.0));
    }

    StepOutput out;
    out.p_vocab = p_vocab;
    out.p_gen = p_gen;
    out.alpha = alpha;
    out.next = {h_next, c_next, context};
    return out;
}

Var SummarizerGraph::final_distribution(const StepOutput& out,
                                        const std::vector<int>& extended_ids, int n_oov) {
    if (!config_.use_pointer) return out.p_vocab;
    return graph_.pointer_mixture(out.p_vocab, out.alpha, out.p_gen, extended_ids, n_oov);
}

namespace {

void write_tensor(std::ostream& os, const std::string& name, const Tensor2D& t) {
    os << "tensor " << name << ' ' << t.rows() << ' ' << t.cols() << '\n';
    os << std::setprecision(17);
    for (int r = 0; r < t.rows(); ++r) {
        for (int c = 0; c < t.cols(); ++c) {
            if (c) os << ' ';
            os << t.at(r, c);
        }
        os << '\n';
    }
}

}  // namespace

void save_checkpoint(const ModelParams& params, const std::string& path) {
    check_config(params.config);
    std::ofstream os(path);
    if (!os) throw IoError("cannot open checkpoint for writing: " + path);
    const ModelConfig& c = params.config;
    os << "amsum-checkpoint 1\n";
    os << "vocab " << c.vocab_size << " emb " << c.emb_dim << " hidden " << c.hidden_dim
       << " attn " << c.attn_dim << " pointer " << (c.use_pointer ? 1 : 0) << " seed "
       << c.seed << '\n';
    for_each_param(params, [&os](const std::string& name, const Tensor2D& t) {
        write_tensor(os, name, t);
    });
    os << "end\n";
    if (!os) throw IoError("failed writing checkpoint: " + path);
}

ModelParams load_checkpoint(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open checkpoint: " + path);
    std::string line;
    if (!std::getline(is, line) || line != "amsum-checkpoint 1")
        throw FormatError(path + ": not an amsum checkpoint");
    if (!std::getline(is, line)) throw FormatError(path + ": missing config line");
    ModelConfig cfg;
    {
        std::istringstream ls(line);
        std::string kv, ke, kh, ka, kp, ks;
        int pointer_flag = 0;
        if (!(ls >> kv >> cfg.vocab_size >> ke >> cfg.emb_dim >> kh >> cfg.hidden_dim >>
              ka >> cfg.attn_dim >> kp >> pointer_flag >> ks >> cfg.seed) ||
            kv != "vocab" || ke != "emb" || kh != "hidden" || ka != "attn" ||
            kp != "pointer" || ks != "seed")
            throw FormatError(path + ": bad config line: " + line);
        cfg.use_pointer = pointer_flag != 0;
    }
    check_config(cfg);
    ModelParams params = zero_params(cfg);

    std::map<std::string, Tensor2D*> by_name;
    for_each_param(params, [&by_name](const std::string& name, Tensor2D& t) {
        by_name[name] = &t;
    });
    std::map<std::string, bool> seen;

    while (std::getline(is, line)) {
        if (line == "end") {
            for (const auto& [name, _] : by_name)
                if (!seen[name]) throw FormatError(path + ": missing tensor " + name);
            return params;
        }
        std::istringstream ls(line);
        std::string tag, name;
        int rows = 0, cols = 0;
        if (!(ls >> tag >> name >> rows >> cols) || tag != "tensor")
            throw FormatError(path + ": expected tensor header, got: " + line);
        auto it = by_name.find(name);
        if (it == by_name.end()) throw FormatError(path + ": unknown tensor " + name);
        if (seen[name]) throw FormatError(path + ": duplicate tensor " + name);
        Tensor2D* t = it->second;
        if (rows != t->rows() || cols != t->cols())
            throw FormatError(path + ": tensor " + name + " has shape " +
                              std::to_string(rows) + "x" + std::to_string(cols) +
                              ", expected " + t->shape_str());
        for (int r = 0; r < rows; ++r) {
            if (!std::getline(is, line))
                throw FormatError(path + ": tensor " + name + " truncated at row " +
                                  std::to_string(r));
            std::istringstream rs(line);
            for (int col = 0; col < cols; ++col)
                if (!(rs >> t->at(r, col)))
                    throw FormatError(path + ": tensor " + name + " row " +
                                      std::to_string(r) + " has fewer than " +
                                      std::to_string(cols) + " values");
            double extra;
            if (rs >> extra)
                throw FormatError(path + ": tensor " + name + " row " + std::to_string(r) +
                                  " has more than " + std::to_string(cols) + " values");
        }
        seen[name] = true;
    }
    throw FormatError(path + ": missing end marker");
}

}  // namespace amsum
