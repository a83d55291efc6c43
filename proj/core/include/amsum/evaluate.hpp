#ifndef AMSUM_EVALUATE_HPP
#define AMSUM_EVALUATE_HPP

#include <string>
#include <vector>

#include "amsum/beam.hpp"
#include "amsum/encode.hpp"
#include "amsum/metrics.hpp"
#include "amsum/model.hpp"
#include "amsum/vocab.hpp"

namespace amsum {

struct EvalConfig {
    int beam_width = 4;
    int max_len = 25;
    BleuSmoothing smoothing = BleuSmoothing::kAddOneOnZero;
};

/// Decodes one example and maps the ids back to surface tokens, resolving
/// extended ids through the example's own OOV list.
std::vector<std::string> summarize_example(const ModelParams& params,
                                           const Vocabulary& vocab,
                                           const EncodedExample& example,
                                           const EvalConfig& config);

/// Decodes every example, scores candidate vs reference title, and averages
/// per-example BLEU and ROUGE-1/2/L F1 scores.
CorpusReport evaluate_corpus(const ModelParams& params, const Vocabulary& vocab,
                             const std::vector<EncodedExample>& test_set,
                             const EvalConfig& config);

}  // namespace amsum

#endif  // AMSUM_EVALUATE_HPP
