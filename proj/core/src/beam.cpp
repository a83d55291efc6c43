#include "amsum/beam.hpp"

#include <algorithm>
#include <cmath>

#include "amsum/errors.hpp"
#include "amsum/vocab.hpp"

namespace amsum {

namespace {

struct Hyp {
    std::vector<int> ids;
    double score = 0.0;
    SummarizerGraph::Step state;
    bool stopped = false;
};

double norm_len(const Hyp& h) {
    // STOP is scored when emitted, so it counts toward the length.
    return static_cast<double>(h.ids.size() + (h.stopped ? 1 : 0));
}

DecodeResult to_result(const Hyp& h) {
    DecodeResult r;
    r.ids = h.ids;
    r.score = h.score;
    r.norm_score = h.score / norm_len(h);
    r.stopped = h.stopped;
    return r;
}

}  // namespace

DecodeResult greedy_decode(const ModelParams& params, const EncodedExample& example,
                           int max_len) {
    if (max_len < 1) throw ArgumentError("max_len must be at least 1");
    Graph g;
    SummarizerGraph model(g, params, false);
    auto enc = model.encode(example.encoder_ids, example.enc_mask);

    Hyp hyp;
    hyp.state = model.initial_state(enc);
    for (int t = 0; t < max_len; ++t) {
        const int y_prev = hyp.ids.empty() ? kStartId : hyp.ids.back();
        auto out = model.decode_step(y_prev, hyp.state, enc);
        Var final = model.final_distribution(out, example.encoder_extended_ids,
                                             example.n_oov());
        const Tensor2D& dist = g.value(final);
        int best = 0;
        for (int w = 1; w < dist.cols(); ++w)
            if (dist.at(0, w) > dist.at(0, best)) best = w;
        hyp.score += std::log(dist.at(0, best) + kNllFloor);
        hyp.state = out.next;
        if (best == kStopId) {
            hyp.stopped = true;
            break;
        }
        hyp.ids.push_back(best);
    }
    return to_result(hyp);
}

DecodeResult beam_search(const ModelParams& params, const EncodedExample& example,
                         int beam_width, int max_len) {
    if (beam_width < 1) throw ArgumentError("beam_width must be at least 1");
    if (max_len < 1) throw ArgumentError("max_len must be at least 1");
    Graph g;
    SummarizerGraph model(g, params, false);
    auto enc = model.encode(example.encoder_ids, example.enc_mask);

    std::vector<Hyp> live(1);
    live[0].state = model.initial_state(enc);
    std::vector<Hyp> finished;

    for (int t = 0; t < max_len && !live.empty(); ++t) {
        struct Cand {
            double score;
            int token;
            std::size_t hyp;
        };
        std::vector<Cand> cands;
        std::vector<SummarizerGraph::Step> next_states(live.size());
        for (std::size_t i = 0; i < live.size(); ++i) {
            const int y_prev = live[i].ids.empty() ? kStartId : live[i].ids.back();
            auto out = model.decode_step(y_prev, live[i].state, enc);
            Var final = model.final_distribution(out, example.encoder_extended_ids,
                                                 example.n_oov());
            const Tensor2D& dist = g.value(final);
            next_states[i] = out.next;
            for (int w = 0; w < dist.cols(); ++w)
                cands.push_back({live[i].score + std::log(dist.at(0, w) + kNllFloor), w, i});
        }
        std::sort(cands.begin(), cands.end(), [](const Cand& a, const Cand& b) {
            if (a.score != b.score) return a.score > b.score;
            if (a.token != b.token) return a.token < b.token;
            return a.hyp < b.hyp;
        });
        if (cands.size() > static_cast<std::size_t>(beam_width))
            cands.resize(static_cast<std::size_t>(beam_width));

        std::vector<Hyp> next_live;
        for (const Cand& c : cands) {
            Hyp h;
            h.ids = live[c.hyp].ids;
            h.score = c.score;
            h.state = next_states[c.hyp];
            if (c.token == kStopId) {
                h.stopped = true;
                finished.push_back(std::move(h));
            } else {
                h.ids.push_back(c.token);
                next_live.push_back(std::move(h));
            }
        }
        live = std::move(next_live);
    }
    for (Hyp& h : live) finished.push_back(std::move(h));

    // Exact normalized-score ties keep the earliest finished hypothesis.
    std::size_t best = 0;
    for (std::size_t i = 1; i < finished.size(); ++i)
        if (finished[i].score / norm_len(finished[i]) >
            finished[best].score / norm_len(finished[best]))
            best = i;
    return to_result(finished[best]);
}

}  // namespace amsum
