#include "amsum/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "amsum/errors.hpp"

namespace amsum {

namespace {

using NgramCounts = std::map<std::vector<std::string>, int>;

NgramCounts count_ngrams(const TokenSeq& seq, int n) {
    NgramCounts counts;
    if (static_cast<int>(seq.size()) < n) return counts;
    for (std::size_t i = 0; i + n <= seq.size(); ++i) {
        ++counts[std::vector<std::string>(seq.begin() + i, seq.begin() + i + n)];
    }
    return counts;
}

double f1_of(double p, double r) { return p + r > 0.0 ? 2.0 * p * r / (p + r) : 0.0; }

int lcs_length(const TokenSeq& a, const TokenSeq& b) {
    const std::size_t n = a.size(), m = b.size();
    std::vector<int> prev(m + 1, 0), cur(m + 1, 0);
    for (std::size_t i = 1; i <= n; ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            cur[j] = a[i - 1] == b[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
        }
        std::swap(prev, cur);
    }
    return prev[m];
}

}  // namespace

RougeScore rouge_n(const TokenSeq& candidate, const TokenSeq& reference, int n) {
    if (n < 1) throw ArgumentError("rouge_n: n must be >= 1");
    const NgramCounts cand = count_ngrams(candidate, n);
    const NgramCounts ref = count_ngrams(reference, n);
    long long overlap = 0;
    for (const auto& [gram, c] : cand) {
        auto it = ref.find(gram);
        if (it != ref.end()) overlap += std::min(c, it->second);
    }
    long long n_cand = 0, n_ref = 0;
    for (const auto& [gram, c] : cand) n_cand += c;
    for (const auto& [gram, c] : ref) n_ref += c;
    RougeScore score;
    score.precision = static_cast<double>(overlap) / std::max<long long>(1, n_cand);
    score.recall = static_cast<double>(overlap) / std::max<long long>(1, n_ref);
    score.f1 = f1_of(score.precision, score.recall);
    return score;
}

RougeScore rouge_l(const TokenSeq& candidate, const TokenSeq& reference) {
    RougeScore score;
    if (candidate.empty() || reference.empty()) return score;
    const int lcs = lcs_length(candidate, reference);
    score.precision = static_cast<double>(lcs) / candidate.size();
    score.recall = static_cast<double>(lcs) / reference.size();
    score.f1 = f1_of(score.precision, score.recall);
    return score;
}

BleuScore bleu(const TokenSeq& candidate, const std::vector<TokenSeq>& references, int max_n,
               BleuSmoothing smoothing) {
    if (max_n < 1) throw ArgumentError("bleu: max_n must be >= 1");
    if (references.empty()) throw ArgumentError("bleu: need at least one reference");
    BleuScore out;
    out.modified_precisions.assign(static_cast<std::size_t>(max_n), 0.0);
    const std::size_t c = candidate.size();
    if (c == 0) {
        out.score = 0.0;
        out.brevity_penalty = 0.0;
        return out;
    }

    // Brevity penalty against the reference length closest to c, shorter on ties.
    std::size_t r = references[0].size();
    for (const TokenSeq& ref : references) {
        const auto d_new = ref.size() > c ? ref.size() - c : c - ref.size();
        const auto d_old = r > c ? r - c : c - r;
        if (d_new < d_old || (d_new == d_old && ref.size() < r)) r = ref.size();
    }
    out.brevity_penalty = c >= r ? 1.0 : std::exp(1.0 - static_cast<double>(r) / c);

    double log_sum = 0.0;
    bool any_zero_strict = false;
    for (int n = 1; n <= max_n; ++n) {
        const NgramCounts cand = count_ngrams(candidate, n);
        NgramCounts max_ref;
        for (const TokenSeq& ref : references) {
            for (const auto& [gram, cnt] : count_ngrams(ref, n)) {
                auto [it, inserted] = max_ref.emplace(gram, cnt);
                if (!inserted) it->second = std::max(it->second, cnt);
            }
        }
        long long matched = 0, total = 0;
        for (const auto& [gram, cnt] : cand) {
            total += cnt;
            auto it = max_ref.find(gram);
            if (it != max_ref.end()) matched += std::min(cnt, it->second);
        }
        double p;
        if (smoothing == BleuSmoothing::kAddOneOnZero && matched == 0) {
            p = 1.0 / static_cast<double>(total + 1);
        } else if (total == 0) {
            p = 0.0;
        } else {
            p = static_cast<double>(matched) / static_cast<double>(total);
        }
        out.modified_precisions[static_cast<std::size_t>(n - 1)] = p;
        if (p <= 0.0) {
            any_zero_strict = true;
        } else {
            log_sum += std::log(p);
        }
    }
    if (any_zero_strict) {
        out.score = 0.0;
    } else {
        out.score = out.brevity_penalty * std::exp(log_sum / max_n);
    }
    return out;
}

std::string report_to_json(const CorpusReport& report) {
    nlohmann::ordered_json obj;
    obj["count"] = report.count;
    obj["bleu"] = report.bleu;
    obj["rouge_1_f"] = report.rouge_1_f;
    obj["rouge_2_f"] = report.rouge_2_f;
    obj["rouge_l_f"] = report.rouge_l_f;
    return obj.dump(2);
}

std::string report_to_text(const CorpusReport& report) {
    std::ostringstream os;
    os << "examples " << report.count << "\n"
       << "BLEU     " << report.bleu << "\n"
       << "ROUGE-1f " << report.rouge_1_f * 100.0 << "\n"
       << "ROUGE-2f " << report.rouge_2_f * 100.0 << "\n"
       << "ROUGE-Lf " << report.rouge_l_f * 100.0 << "\n";
    return os.str();
}

void save_report(const CorpusReport& report, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open report file for writing: " + path);
    out << report_to_json(report) << '\n';
    if (!out) throw IoError("failed writing report file: " + path);
}

}  // namespace amsum
