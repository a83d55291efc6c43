#ifndef AMSUM_METRICS_HPP
#define AMSUM_METRICS_HPP

#include <string>
#include <vector>

namespace amsum {

struct RougeScore {
    double precision = 0.0;
    double recall = 0.0;
    double f1 = 0.0;
};

enum class BleuSmoothing {
    kNone,         // any zero modified precision collapses the score to 0
    kAddOneOnZero  // a zero match count becomes 1/(denominator+1) for that order
};

struct BleuScore {
    double score = 0.0;
    double brevity_penalty = 1.0;
    std::vector<double> modified_precisions;  // orders 1..max_n
};

using TokenSeq = std::vector<std::string>;

/// N-gram overlap with per-gram clipping: P = overlap / candidate n-grams,
/// R = overlap / reference n-grams, F1 = 2PR/(P+R). Empty sides score 0.
RougeScore rouge_n(const TokenSeq& candidate, const TokenSeq& reference, int n);

/// Longest-common-subsequence variant: P = LCS/|cand|, R = LCS/|ref|.
RougeScore rouge_l(const TokenSeq& candidate, const TokenSeq& reference);

/// BLEU with count clipping against the max per-reference count and the
/// closest-length brevity penalty (ties prefer the shorter reference). An
/// empty candidate scores 0 without raising.
BleuScore bleu(const TokenSeq& candidate, const std::vector<TokenSeq>& references, int max_n = 4,
               BleuSmoothing smoothing = BleuSmoothing::kAddOneOnZero);

/// Corpus-level means in the report field order bleu, rouge_1_f, rouge_2_f,
/// rouge_l_f. BLEU stays on the 0-1 scale; ROUGE is also 0-1 here (the CLI
/// additionally prints ROUGE x100).
struct CorpusReport {
    int count = 0;
    double bleu = 0.0;
    double rouge_1_f = 0.0;
    double rouge_2_f = 0.0;
    double rouge_l_f = 0.0;
};

std::string report_to_json(const CorpusReport& report);
std::string report_to_text(const CorpusReport& report);
void save_report(const CorpusReport& report, const std::string& path);

}  // namespace amsum

#endif  // AMSUM_METRICS_HPP
