#ifndef AMSUM_CORPUS_HPP
#define AMSUM_CORPUS_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace amsum {

/// One article/title pair. Fields are whitespace-trimmed and non-empty once
/// an example has been accepted into a corpus.
struct RawExample {
    std::string article;
    std::string title;
    std::string source;  // optional URL, may be empty
};

struct IngestStats {
    std::size_t lines_read = 0;
    std::size_t skipped_empty = 0;  // empty article or title after trimming
};

// JSON Lines with fields "article", "title", optional "source"; UTF-8, LF
// line endings. Malformed JSON or missing fields raise FormatError naming
// the line; examples that are empty after trimming are skipped and counted.
std::vector<RawExample> load_jsonl(const std::string& path, IngestStats* stats = nullptr);
void save_jsonl(const std::vector<RawExample>& corpus, const std::string& path);

// Keeps examples whose tokenized title has at least min_tokens tokens;
// order preserved.
std::vector<RawExample> filter_by_title_length(const std::vector<RawExample>& corpus,
                                               int min_tokens);

struct CorpusSplit {
    std::vector<RawExample> train;
    std::vector<RawExample> val;
    std::vector<RawExample> test;
};

// Seeded shuffle then contiguous partition. Val and test sizes are
// floor(ratio * n); the remainder goes to train.
CorpusSplit split_corpus(const std::vector<RawExample>& corpus,
                         const std::array<double, 3>& ratios, std::uint64_t seed);

}  // namespace amsum

#endif  // AMSUM_CORPUS_HPP
