#ifndef AMSUM_EMBEDDING_HPP
#define AMSUM_EMBEDDING_HPP

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "amsum/tensor.hpp"
#include "amsum/vocab.hpp"

namespace amsum {

/// Input and output vector tables of a skip-gram model. Downstream consumers
/// (the summarizer's embedding init, nearest_neighbors) read input_vectors.
struct EmbeddingTable {
    int vocab_size = 0;
    int dim = 0;
    Tensor2D input_vectors;   // vocab_size x dim
    Tensor2D output_vectors;  // vocab_size x dim
};

struct SkipGramConfig {
    int window = 5;
    int negatives = 5;
    double learning_rate = 0.025;
    double min_learning_rate = 0.0001;
    int epochs = 5;
    double noise_exponent = 0.75;
    int dim = 100;
    std::uint64_t seed = 1;
};

/// (center, context) pairs for every position pair within `window`,
/// clipped at the sequence bounds, ordered by center then context position.
std::vector<std::pair<int, int>> generate_pairs(const std::vector<int>& tokens, int window);

/// P(w) proportional to count(w)^exponent over non-reserved observed tokens;
/// reserved ids get exactly 0. Sums to 1.
std::vector<double> noise_distribution(const std::vector<std::int64_t>& counts, double exponent);

/// Negative-sampling pair loss
///   -ln s(u_o . v_c) - sum_n ln s(-u_n . v_c)
/// with v from input_vectors and u from output_vectors.
double skipgram_pair_loss(const EmbeddingTable& table, int center, int context,
                          const std::vector<int>& negatives);

/// Accumulates the analytic gradient of skipgram_pair_loss into the two
/// gradient tensors (same shapes as the tables) and returns the loss.
double skipgram_pair_loss_grad(const EmbeddingTable& table, int center, int context,
                               const std::vector<int>& negatives, Tensor2D& grad_input,
                               Tensor2D& grad_output);

struct SkipGramResult {
    EmbeddingTable table;
    std::vector<double> epoch_mean_loss;
};

/// SGD over all pairs of all sentences, negatives drawn from the noise
/// distribution, learning rate decayed linearly to min_learning_rate.
/// Deterministic for a fixed seed.
SkipGramResult train_skipgram(const std::vector<std::vector<int>>& sentences,
                              const Vocabulary& vocab, const SkipGramConfig& config);

/// Top-k neighbors of token_id by cosine over input_vectors, excluding the
/// query and reserved ids; ties broken by ascending id.
std::vector<std::pair<int, double>> nearest_neighbors(const EmbeddingTable& table, int token_id,
                                                      int k);

/// Text interchange format: "<vocab_size> <dim>" header then one
/// "<token> <v1> ... <vdim>" line per id. Only input_vectors travel;
/// load_embeddings leaves output_vectors zeroed.
void save_embeddings(const EmbeddingTable& table, const Vocabulary& vocab,
                     const std::string& path);
EmbeddingTable load_embeddings(const std::string& path, std::vector<std::string>* tokens_out);

/// Copies file vectors into rows of `target` for every file token present in
/// `vocab`; rows for absent tokens are left untouched. Returns the number of
/// rows initialized.
int apply_pretrained_embeddings(const std::string& path, const Vocabulary& vocab,
                                Tensor2D& target);

}  // namespace amsum

#endif  // AMSUM_EMBEDDING_HPP
