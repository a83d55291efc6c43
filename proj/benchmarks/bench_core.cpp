#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include "amsum/beam.hpp"
#include "amsum/encode.hpp"
#include "amsum/graph.hpp"
#include "amsum/metrics.hpp"
#include "amsum/model.hpp"
#include "amsum/rng.hpp"
#include "amsum/trainer.hpp"
#include "amsum/vocab.hpp"

namespace {

using namespace amsum;

ModelParams bench_model(int hidden) {
    ModelConfig cfg;
    cfg.vocab_size = 200;
    cfg.emb_dim = 32;
    cfg.hidden_dim = hidden;
    cfg.attn_dim = hidden;
    cfg.seed = 1;
    return init_model(cfg);
}

EncodedExample bench_example(int enc_len, int dec_len, std::uint64_t seed) {
    Rng rng(seed);
    EncodedExample ex;
    for (int t = 0; t < enc_len; ++t) {
        const int id = kNumReserved + static_cast<int>(rng.below(196));
        ex.encoder_ids.push_back(id);
        ex.encoder_extended_ids.push_back(id);
    }
    ex.enc_mask.assign(ex.encoder_ids.size(), 1);
    ex.decoder_input_ids.push_back(kStartId);
    for (int t = 0; t < dec_len - 1; ++t) {
        const int id = kNumReserved + static_cast<int>(rng.below(196));
        ex.decoder_input_ids.push_back(id);
        ex.target_ids.push_back(id);
    }
    ex.target_ids.push_back(kStopId);
    ex.dec_mask.assign(ex.target_ids.size(), 1);
    return ex;
}

void BM_EncodeArticle(benchmark::State& state) {
    const ModelParams params = bench_model(static_cast<int>(state.range(0)));
    const EncodedExample ex = bench_example(50, 8, 3);
    for (auto _ : state) {
        Graph g;
        SummarizerGraph sg(g, params, false);
        auto enc = sg.encode(ex.encoder_ids, ex.enc_mask);
        benchmark::DoNotOptimize(g.value(enc.h0).at(0, 0));
    }
}
BENCHMARK(BM_EncodeArticle)->Arg(32)->Arg(64);

void BM_TeacherForcedStep(benchmark::State& state) {
    ModelParams params = bench_model(32);
    std::vector<EncodedExample> batch;
    for (std::uint64_t i = 0; i < 4; ++i) batch.push_back(bench_example(30, 8, 10 + i));
    TrainConfig tc;
    tc.batch_size = 4;
    Trainer trainer(tc);
    for (auto _ : state) {
        benchmark::DoNotOptimize(trainer.teacher_forced_step(batch, params));
    }
}
BENCHMARK(BM_TeacherForcedStep);

void BM_GreedyDecode(benchmark::State& state) {
    const ModelParams params = bench_model(32);
    const EncodedExample ex = bench_example(30, 8, 21);
    for (auto _ : state) {
        benchmark::DoNotOptimize(greedy_decode(params, ex, 10).score);
    }
}
BENCHMARK(BM_GreedyDecode);

void BM_BeamSearch(benchmark::State& state) {
    const ModelParams params = bench_model(32);
    const EncodedExample ex = bench_example(30, 8, 22);
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            beam_search(params, ex, static_cast<int>(state.range(0)), 10).score);
    }
}
BENCHMARK(BM_BeamSearch)->Arg(4)->Arg(8);

void BM_RougeL(benchmark::State& state) {
    Rng rng(5);
    TokenSeq cand, ref;
    for (int i = 0; i < 30; ++i) cand.push_back(std::to_string(rng.below(40)));
    for (int i = 0; i < 15; ++i) ref.push_back(std::to_string(rng.below(40)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(rouge_l(cand, ref).f1);
    }
}
BENCHMARK(BM_RougeL);

void BM_Bleu(benchmark::State& state) {
    Rng rng(6);
    TokenSeq cand, ref;
    for (int i = 0; i < 25; ++i) cand.push_back(std::to_string(rng.below(40)));
    for (int i = 0; i < 25; ++i) ref.push_back(std::to_string(rng.below(40)));
    const std::vector<TokenSeq> refs = {ref};
    for (auto _ : state) {
        benchmark::DoNotOptimize(bleu(cand, refs, 4, BleuSmoothing::kAddOneOnZero).score);
    }
}
BENCHMARK(BM_Bleu);

}  // namespace

BENCHMARK_MAIN();
