#include "amsum/evaluate.hpp"

#include <string>

#include "amsum/errors.hpp"

namespace amsum {

namespace {

void check_vocab(const ModelParams& params, const Vocabulary& vocab) {
    if (vocab.size() != params.config.vocab_size)
        throw ConfigError("vocabulary size " + std::to_string(vocab.size()) +
                          " does not match model vocab_size " +
                          std::to_string(params.config.vocab_size));
}

}  // namespace

std::vector<std::string> summarize_example(const ModelParams& params,
                                           const Vocabulary& vocab,
                                           const EncodedExample& example,
                                           const EvalConfig& config) {
    check_vocab(params, vocab);
    DecodeResult result = beam_search(params, example, config.beam_width, config.max_len);
    return ids_to_tokens(result.ids, vocab, example.article_oov_tokens);
}

CorpusReport evaluate_corpus(const ModelParams& params, const Vocabulary& vocab,
                             const std::vector<EncodedExample>& test_set,
                             const EvalConfig& config) {
    if (test_set.empty()) throw ArgumentError("evaluate_corpus needs a non-empty test set");
    check_vocab(params, vocab);

    CorpusReport report;
    report.count = static_cast<int>(test_set.size());
    for (const EncodedExample& ex : test_set) {
        const std::vector<std::string> candidate =
            summarize_example(params, vocab, ex, config);
        const std::vector<std::string> reference = reference_tokens(ex, vocab);
        report.bleu += bleu(candidate, {reference}, 4, config.smoothing).score;
        report.rouge_1_f += rouge_n(candidate, reference, 1).f1;
        report.rouge_2_f += rouge_n(candidate, reference, 2).f1;
        report.rouge_l_f += rouge_l(candidate, reference).f1;
    }
    const double n = static_cast<double>(test_set.size());
    report.bleu /= n;
    report.rouge_1_f /= n;
    report.rouge_2_f /= n;
    report.rouge_l_f /= n;
    return report;
}

}  // namespace amsum
