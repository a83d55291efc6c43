#include "amsum/corpus.hpp"

#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>

#include "json.hpp"

#include "amsum/errors.hpp"
#include "amsum/rng.hpp"
#include "amsum/text.hpp"

namespace amsum {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

std::vector<RawExample> load_jsonl(const std::string& path, IngestStats* stats) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open corpus file: " + path);
    std::vector<RawExample> corpus;
    std::string line;
    std::size_t lineno = 0;
    std::size_t skipped = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            std::ostringstream os;
            os << path << ":" << lineno << ": " << e.what();
            throw FormatError(os.str());
        }
        if (!obj.is_object() || !obj.contains("article") || !obj.contains("title") ||
            !obj["article"].is_string() || !obj["title"].is_string()) {
            std::ostringstream os;
            os << path << ":" << lineno
               << ": expected object with string fields \"article\" and \"title\"";
            throw FormatError(os.str());
        }
        RawExample ex;
        ex.article = trim(obj["article"].get<std::string>());
        ex.title = trim(obj["title"].get<std::string>());
        if (obj.contains("source") && obj["source"].is_string()) {
            ex.source = obj["source"].get<std::string>();
        }
        validate_utf8(ex.article);
        validate_utf8(ex.title);
        if (ex.article.empty() || ex.title.empty()) {
            ++skipped;
            continue;
        }
        corpus.push_back(std::move(ex));
    }
    if (stats) {
        stats->lines_read = lineno;
        stats->skipped_empty = skipped;
    }
    return corpus;
}

void save_jsonl(const std::vector<RawExample>& corpus, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open corpus file for writing: " + path);
    for (const RawExample& ex : corpus) {
        nlohmann::ordered_json obj;
        obj["article"] = ex.article;
        obj["title"] = ex.title;
        if (!ex.source.empty()) obj["source"] = ex.source;
        out << obj.dump() << '\n';
    }
    if (!out) throw IoError("failed writing corpus file: " + path);
}

std::vector<RawExample> filter_by_title_length(const std::vector<RawExample>& corpus,
                                               int min_tokens) {
    if (min_tokens < 1) throw ArgumentError("filter_by_title_length: min_tokens must be >= 1");
    std::vector<RawExample> kept;
    for (const RawExample& ex : corpus) {
        if (static_cast<int>(tokenize(ex.title).size()) >= min_tokens) kept.push_back(ex);
    }
    return kept;
}

CorpusSplit split_corpus(const std::vector<RawExample>& corpus,
                         const std::array<double, 3>& ratios, std::uint64_t seed) {
    for (double r : ratios) {
        if (r <= 0.0) throw ArgumentError("split_corpus: ratios must be positive");
    }
    const double sum = ratios[0] + ratios[1] + ratios[2];
    if (std::abs(sum - 1.0) > 1e-9) {
        std::ostringstream os;
        os << "split_corpus: ratios sum to " << sum << ", expected 1";
        throw ArgumentError(os.str());
    }
    if (corpus.size() < 3) throw CorpusError("split_corpus: need at least 3 examples");

    std::vector<std::size_t> order(corpus.size());
    std::iota(order.begin(), order.end(), 0);
    Rng rng(seed);
    rng.shuffle(order);

    const std::size_t n = corpus.size();
    const std::size_t n_val = static_cast<std::size_t>(std::floor(ratios[1] * n));
    const std::size_t n_test = static_cast<std::size_t>(std::floor(ratios[2] * n));
    const std::size_t n_train = n - n_val - n_test;

    CorpusSplit split;
    for (std::size_t i = 0; i < n; ++i) {
        const RawExample& ex = corpus[order[i]];
        if (i < n_train) {
            split.train.push_back(ex);
        } else if (i < n_train + n_val) {
            split.val.push_back(ex);
        } else {
            split.test.push_back(ex);
        }
    }
    return split;
}

}  // namespace amsum
