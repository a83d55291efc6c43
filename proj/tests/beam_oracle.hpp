#ifndef AMSUM_TESTS_BEAM_ORACLE_HPP
#define AMSUM_TESTS_BEAM_ORACLE_HPP

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "amsum/encode.hpp"
#include "amsum/graph.hpp"
#include "amsum/model.hpp"
#include "amsum/tensor.hpp"
#include "amsum/vocab.hpp"

namespace testutil {

inline amsum::EncodedExample toy_example(std::vector<int> enc_ids, std::vector<int> ext_ids,
                                         int n_oov) {
    amsum::EncodedExample ex;
    ex.encoder_ids = std::move(enc_ids);
    ex.encoder_extended_ids = std::move(ext_ids);
    ex.article_oov_tokens.assign(static_cast<std::size_t>(n_oov), "oov");
    ex.enc_mask.assign(ex.encoder_ids.size(), 1);
    ex.decoder_input_ids = {amsum::kStartId};
    ex.target_ids = {amsum::kStopId};
    ex.dec_mask = {1};
    return ex;
}

inline amsum::ModelParams toy_model(int vocab, std::uint64_t seed) {
    amsum::ModelConfig cfg;
    cfg.vocab_size = vocab;
    cfg.emb_dim = 3;
    cfg.hidden_dim = 3;
    cfg.attn_dim = 3;
    cfg.seed = seed;
    amsum::ModelParams p = amsum::init_model(cfg);
    // Init weights are tiny; stretch them so distributions are peaked enough
    // for decoding paths to differ between models.
    amsum::for_each_param(p, [](const std::string& name, amsum::Tensor2D& t) {
        if (name == "out.W" || name == "attention.v") {
            for (double& v : t.raw()) v *= 30.0;
        }
    });
    return p;
}

/// Every complete decode of length <= max_len, scored by replaying the model
/// forward per prefix. Shares no state with beam_search.
struct Exhaustive {
    const amsum::ModelParams& params;
    const amsum::EncodedExample& ex;
    int max_len;

    struct Candidate {
        std::vector<int> ids;
        double score = 0.0;
        bool stopped = false;
        double norm() const {
            const auto len = ids.size() + (stopped ? 1u : 0u);
            return score / static_cast<double>(len);
        }
    };
    std::vector<Candidate> all;

    amsum::Tensor2D dist_after(const std::vector<int>& prefix) const {
        amsum::Graph g;
        amsum::SummarizerGraph sg(g, params, false);
        auto enc = sg.encode(ex.encoder_ids, ex.enc_mask);
        auto st = sg.initial_state(enc);
        int prev = amsum::kStartId;
        amsum::SummarizerGraph::StepOutput out;
        for (int tok : prefix) {
            out = sg.decode_step(prev, st, enc);
            st = out.next;
            prev = tok;
        }
        out = sg.decode_step(prev, st, enc);
        return g.value(sg.final_distribution(out, ex.encoder_extended_ids, ex.n_oov()));
    }

    void expand(std::vector<int> prefix, double score) {
        const amsum::Tensor2D dist = dist_after(prefix);
        for (int w = 0; w < dist.cols(); ++w) {
            const double s = score + std::log(dist.at(0, w) + amsum::kNllFloor);
            if (w == amsum::kStopId) {
                all.push_back({prefix, s, true});
            } else {
                auto ids = prefix;
                ids.push_back(w);
                if (static_cast<int>(ids.size()) == max_len) {
                    all.push_back({std::move(ids), s, false});
                } else {
                    expand(std::move(ids), s);
                }
            }
        }
    }

    Candidate best() {
        all.clear();
        expand({}, 0.0);
        if (all.empty()) throw std::logic_error("exhaustive search found no candidates");
        const Candidate* top = &all[0];
        for (const Candidate& c : all) {
            if (c.norm() > top->norm()) top = &c;
        }
        return *top;
    }
};

}  // namespace testutil

#endif  // AMSUM_TESTS_BEAM_ORACLE_HPP
