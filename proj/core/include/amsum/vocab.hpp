#ifndef AMSUM_VOCAB_HPP
#define AMSUM_VOCAB_HPP

#include <cstdint>
#include <string>
#include <unordered_map>
#include <vector>

namespace amsum {

inline constexpr int kPadId = 0;
inline constexpr int kUnkId = 1;
inline constexpr int kStartId = 2;
inline constexpr int kStopId = 3;
inline constexpr int kNumReserved = 4;

inline constexpr const char* kPadToken = "<pad>";
inline constexpr const char* kUnkToken = "<unk>";
inline constexpr const char* kStartToken = "<start>";
inline constexpr const char* kStopToken = "<stop>";

/// Bidirectional token<->id map. Ids 0..3 are the reserved PAD/UNK/START/STOP
/// symbols; corpus tokens start at id 4, ordered by descending frequency with
/// lexicographic tie-break.
class Vocabulary {
public:
    Vocabulary();

    // Builds from (token, count) pairs that already passed the min-count
    // filter and capacity cut; callers normally go through build_vocabulary.
    static Vocabulary from_counted(std::vector<std::pair<std::string, std::int64_t>> entries);

    int size() const { return static_cast<int>(id_to_token_.size()); }

    // Token id, or kUnkId if absent.
    int id_of(const std::string& token) const;
    bool contains(const std::string& token) const;
    const std::string& token_of(int id) const;
    std::int64_t count_of(const std::string& token) const;

    // Surface form for a base or extended id; ids >= size() index into the
    // per-example OOV token list.
    const std::string& surface(int id, const std::vector<std::string>& oov_tokens) const;

    // Counts for ids 0..size()-1 (reserved ids report 0); the negative
    // sampling noise distribution is built from this.
    std::vector<std::int64_t> id_counts() const;

    void save(const std::string& path) const;
    static Vocabulary load(const std::string& path);

private:
    std::unordered_map<std::string, int> token_to_id_;
    std::vector<std::string> id_to_token_;
    std::vector<std::int64_t> counts_;  // aligned with id_to_token_
};

struct RawExample;  // corpus.hpp

/// Counts tokens over articles and titles, drops tokens below min_count,
/// keeps the (max_size - 4) most frequent and assigns ids.
Vocabulary build_vocabulary(const std::vector<RawExample>& corpus, int max_size, int min_count);

}  // namespace amsum

#endif  // AMSUM_VOCAB_HPP
