#ifndef AMSUM_ENCODE_HPP
#define AMSUM_ENCODE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "amsum/corpus.hpp"
#include "amsum/vocab.hpp"

namespace amsum {

/// One article/title pair as id sequences. encoder_ids live in the base
/// vocabulary (OOV -> UNK); encoder_extended_ids assign vocab_size + k to the
/// k-th distinct article OOV in first-occurrence order. target_ids live in
/// the extended space: a title OOV that also occurs in the article keeps its
/// extended id, any other OOV becomes UNK. decoder_input_ids is the
/// START-prefixed base-vocabulary title; target_ids is that sequence shifted
/// left with STOP appended, so both have equal length.
struct EncodedExample {
    std::vector<int> encoder_ids;
    std::vector<int> encoder_extended_ids;
    std::vector<std::string> article_oov_tokens;
    std::vector<int> decoder_input_ids;
    std::vector<int> target_ids;
    // 1 = real token, 0 = padding. enc_mask aligns with encoder_ids,
    // dec_mask with decoder_input_ids/target_ids. Padding must be trailing.
    std::vector<std::uint8_t> enc_mask;
    std::vector<std::uint8_t> dec_mask;

    int n_oov() const { return static_cast<int>(article_oov_tokens.size()); }
    std::size_t enc_len() const { return encoder_ids.size(); }
    std::size_t dec_len() const { return decoder_input_ids.size(); }
};

/// Tokenizes, truncates (article to max_enc_len, title to max_dec_len - 1 to
/// leave room for STOP) and encodes. Throws ExampleRejectedError when the
/// tokenized article or title is empty.
EncodedExample encode_example(const RawExample& raw, const Vocabulary& vocab, int max_enc_len,
                              int max_dec_len);

/// Encoder side only, for decoding fresh articles with no reference title.
/// The decoder fields hold a minimal START/STOP pair.
EncodedExample encode_article(const std::string& article, const Vocabulary& vocab,
                              int max_enc_len);

/// Maps a sequence of (possibly extended) ids back to surface tokens,
/// skipping nothing; callers strip STOP/PAD beforehand if needed.
std::vector<std::string> ids_to_tokens(const std::vector<int>& ids, const Vocabulary& vocab,
                                       const std::vector<std::string>& oov_tokens);

/// Reference surface tokens for scoring: target_ids with the final STOP and
/// any padding removed, mapped through the vocabulary and OOV list.
std::vector<std::string> reference_tokens(const EncodedExample& ex, const Vocabulary& vocab);

}  // namespace amsum

#endif  // AMSUM_ENCODE_HPP
