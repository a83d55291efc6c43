#ifndef AMSUM_BEAM_HPP
#define AMSUM_BEAM_HPP

#include <vector>

#include "amsum/encode.hpp"
#include "amsum/model.hpp"

namespace amsum {

/// Decoded token ids in the extended vocabulary, without START or STOP.
struct DecodeResult {
    std::vector<int> ids;
    double score = 0.0;       // summed log probability including STOP if emitted
    double norm_score = 0.0;  // score / emitted token count
    bool stopped = false;     // ended on STOP rather than the length cap
};

/// Argmax decoding, one token at a time; ties go to the lowest id.
DecodeResult greedy_decode(const ModelParams& params, const EncodedExample& example,
                           int max_len);

/// Beam search with summed log-probability scores. Hypotheses finish on STOP
/// or at max_len; the returned hypothesis maximizes score normalized by
/// emitted length. Ties during expansion break by token id ascending, so
/// width 1 reproduces greedy_decode exactly.
DecodeResult beam_search(const ModelParams& params, const EncodedExample& example,
                         int beam_width, int max_len);

}  // namespace amsum

#endif  // AMSUM_BEAM_HPP
