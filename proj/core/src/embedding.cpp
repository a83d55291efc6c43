#include "amsum/embedding.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "amsum/errors.hpp"
#include "amsum/rng.hpp"

namespace amsum {

std::vector<std::pair<int, int>> generate_pairs(const std::vector<int>& tokens, int window) {
    if (window < 1) throw ArgumentError("generate_pairs: window must be >= 1");
    std::vector<std::pair<int, int>> pairs;
    const int n = static_cast<int>(tokens.size());
    for (int i = 0; i < n; ++i) {
        const int lo = std::max(0, i - window);
        const int hi = std::min(n - 1, i + window);
        for (int j = lo; j <= hi; ++j) {
            if (j != i) pairs.emplace_back(tokens[i], tokens[j]);
        }
    }
    return pairs;
}

std::vector<double> noise_distribution(const std::vector<std::int64_t>& counts, double exponent) {
    std::vector<double> probs(counts.size(), 0.0);
    double total = 0.0;
    for (std::size_t id = kNumReserved; id < counts.size(); ++id) {
        if (counts[id] > 0) {
            probs[id] = std::pow(static_cast<double>(counts[id]), exponent);
            total += probs[id];
        }
    }
    if (total <= 0.0) throw ArgumentError("noise_distribution: no observed non-reserved tokens");
    for (double& p : probs) p /= total;
    return probs;
}

double skipgram_pair_loss(const EmbeddingTable& table, int center, int context,
                          const std::vector<int>& negatives) {
    const int dim = table.dim;
    const double* vc = table.input_vectors.data() + static_cast<std::size_t>(center) * dim;
    const auto dot_out = [&](int id) {
        const double* u = table.output_vectors.data() + static_cast<std::size_t>(id) * dim;
        double s = 0.0;
        for (int d = 0; d < dim; ++d) s += u[d] * vc[d];
        return s;
    };
    double loss = -std::log(sigmoid_scalar(dot_out(context)) + kNllFloor);
    for (int neg : negatives) {
        loss += -std::log(sigmoid_scalar(-dot_out(neg)) + kNllFloor);
    }
    return loss;
}

double skipgram_pair_loss_grad(const EmbeddingTable& table, int center, int context,
                               const std::vector<int>& negatives, Tensor2D& grad_input,
                               Tensor2D& grad_output) {
    const int dim = table.dim;
    const double* vc = table.input_vectors.data() + static_cast<std::size_t>(center) * dim;
    double* gvc = grad_input.data() + static_cast<std::size_t>(center) * dim;
    double loss = 0.0;
    // d/dz of -ln s(z) is s(z) - 1; of -ln s(-z) is s(z). The kNllFloor
    // inside the loss shifts these by a factor s/(s + floor), kept so the
    // analytic gradient matches the floored loss exactly.
    const auto accumulate = [&](int id, bool positive) {
        const double* u = table.output_vectors.data() + static_cast<std::size_t>(id) * dim;
        double* gu = grad_output.data() + static_cast<std::size_t>(id) * dim;
        double z = 0.0;
        for (int d = 0; d < dim; ++d) z += u[d] * vc[d];
        const double s = sigmoid_scalar(positive ? z : -z);
        loss += -std::log(s + kNllFloor);
        const double shrink = s / (s + kNllFloor);
        const double dz = positive ? (s - 1.0) * shrink : (1.0 - s) * shrink;
        for (int d = 0; d < dim; ++d) {
            gvc[d] += dz * u[d];
            gu[d] += dz * vc[d];
        }
    };
    accumulate(context, true);
    for (int neg : negatives) accumulate(neg, false);
    return loss;
}

SkipGramResult train_skipgram(const std::vector<std::vector<int>>& sentences,
                              const Vocabulary& vocab, const SkipGramConfig& config) {
    if (sentences.empty()) throw CorpusError("train_skipgram: empty corpus");
    if (config.window < 1 || config.negatives < 1) {
        throw ArgumentError("train_skipgram: window and negatives must be >= 1");
    }
    const int vocab_size = vocab.size();
    const int dim = config.dim;

    SkipGramResult result;
    EmbeddingTable& table = result.table;
    table.vocab_size = vocab_size;
    table.dim = dim;
    table.output_vectors = Tensor2D::zeros(vocab_size, dim);
    table.input_vectors = Tensor2D(vocab_size, dim);
    Rng rng(config.seed);
    for (std::size_t i = 0; i < table.input_vectors.size(); ++i) {
        table.input_vectors[i] = rng.uniform(-0.5 / dim, 0.5 / dim);
    }

    const std::vector<double> noise = noise_distribution(vocab.id_counts(), config.noise_exponent);
    // CDF inversion keeps negative draws on the pinned uniform01 stream.
    std::vector<double> cdf(noise.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < noise.size(); ++i) {
        acc += noise[i];
        cdf[i] = acc;
    }
    const auto draw_negative = [&]() {
        const double u = rng.uniform01();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        std::size_t id = static_cast<std::size_t>(it - cdf.begin());
        if (id >= noise.size()) id = noise.size() - 1;
        while (id > 0 && noise[id] <= 0.0) --id;
        return static_cast<int>(id);
    };

    std::size_t total_pairs = 0;
    for (const auto& sent : sentences) {
        total_pairs += generate_pairs(sent, config.window).size();
    }
    const std::size_t schedule_len = std::max<std::size_t>(1, total_pairs * config.epochs);

    std::vector<int> negatives(static_cast<std::size_t>(config.negatives));
    std::size_t pair_index = 0;
    for (int epoch = 0; epoch < config.epochs; ++epoch) {
        double epoch_loss = 0.0;
        std::size_t epoch_pairs = 0;
        for (const auto& sent : sentences) {
            for (const auto& [center, context] : generate_pairs(sent, config.window)) {
                const double progress = static_cast<double>(pair_index) / schedule_len;
                const double lr =
                    std::max(config.min_learning_rate,
                             config.learning_rate * (1.0 - progress));
                for (int& neg : negatives) neg = draw_negative();

                const int d = dim;
                double* vc = table.input_vectors.data() + static_cast<std::size_t>(center) * d;
                std::vector<double> vc_update(static_cast<std::size_t>(d), 0.0);
                const auto sgd_one = [&](int id, bool positive) {
                    double* u = table.output_vectors.data() + static_cast<std::size_t>(id) * d;
                    double z = 0.0;
                    for (int j = 0; j < d; ++j) z += u[j] * vc[j];
                    const double s = sigmoid_scalar(positive ? z : -z);
                    epoch_loss += -std::log(s + kNllFloor);
                    const double dz = positive ? s - 1.0 : 1.0 - s;
                    for (int j = 0; j < d; ++j) {
                        vc_update[static_cast<std::size_t>(j)] += dz * u[j];
                        u[j] -= lr * dz * vc[j];
                    }
                };
                sgd_one(context, true);
                for (int neg : negatives) sgd_one(neg, false);
                for (int j = 0; j < d; ++j) vc[j] -= lr * vc_update[static_cast<std::size_t>(j)];

                ++pair_index;
                ++epoch_pairs;
            }
        }
        result.epoch_mean_loss.push_back(epoch_pairs ? epoch_loss / epoch_pairs : 0.0);
    }
    return result;
}

std::vector<std::pair<int, double>> nearest_neighbors(const EmbeddingTable& table, int token_id,
                                                      int k) {
    if (k >= table.vocab_size) {
        throw ArgumentError("nearest_neighbors: k must be below the vocabulary size");
    }
    if (token_id < 0 || token_id >= table.vocab_size) {
        throw IndexError("nearest_neighbors: token id out of range");
    }
    const int dim = table.dim;
    const auto norm_of = [&](int id) {
        const double* v = table.input_vectors.data() + static_cast<std::size_t>(id) * dim;
        double s = 0.0;
        for (int d = 0; d < dim; ++d) s += v[d] * v[d];
        return std::sqrt(s);
    };
    const double qnorm = norm_of(token_id);
    if (qnorm == 0.0) throw DegenerateVectorError("nearest_neighbors: zero-norm query vector");
    const double* q = table.input_vectors.data() + static_cast<std::size_t>(token_id) * dim;

    std::vector<std::pair<int, double>> scored;
    for (int id = kNumReserved; id < table.vocab_size; ++id) {
        if (id == token_id) continue;
        const double n = norm_of(id);
        if (n == 0.0) continue;
        const double* v = table.input_vectors.data() + static_cast<std::size_t>(id) * dim;
        double dot = 0.0;
        for (int d = 0; d < dim; ++d) dot += q[d] * v[d];
        scored.emplace_back(id, dot / (qnorm * n));
    }
    std::stable_sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
        if (a.second != b.second) return a.second > b.second;
        return a.first < b.first;
    });
    if (static_cast<int>(scored.size()) > k) scored.resize(static_cast<std::size_t>(k));
    return scored;
}

void save_embeddings(const EmbeddingTable& table, const Vocabulary& vocab,
                     const std::string& path) {
    if (vocab.size() != table.vocab_size) {
        throw ConfigError("save_embeddings: vocabulary size does not match the table");
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open embedding file for writing: " + path);
    out << table.vocab_size << ' ' << table.dim << '\n';
    out << std::setprecision(12);
    for (int id = 0; id < table.vocab_size; ++id) {
        out << vocab.token_of(id);
        for (int d = 0; d < table.dim; ++d) out << ' ' << table.input_vectors.at(id, d);
        out << '\n';
    }
    if (!out) throw IoError("failed writing embedding file: " + path);
}

EmbeddingTable load_embeddings(const std::string& path, std::vector<std::string>* tokens_out) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open embedding file: " + path);
    std::string line;
    if (!std::getline(in, line) || line.empty()) {
        throw FormatError(path + ":1: expected header '<vocab_size> <dim>'");
    }
    std::istringstream header(line);
    int vocab_size = 0, dim = 0;
    if (!(header >> vocab_size >> dim) || vocab_size <= 0 || dim <= 0) {
        throw FormatError(path + ":1: expected header '<vocab_size> <dim>'");
    }
    EmbeddingTable table;
    table.vocab_size = vocab_size;
    table.dim = dim;
    table.input_vectors = Tensor2D::zeros(vocab_size, dim);
    table.output_vectors = Tensor2D::zeros(vocab_size, dim);
    if (tokens_out) tokens_out->clear();
    int row = 0;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        if (row >= vocab_size) {
            std::ostringstream os;
            os << path << ":" << lineno << ": more rows than the declared vocab size "
               << vocab_size;
            throw FormatError(os.str());
        }
        std::istringstream fields(line);
        std::string token;
        fields >> token;
        for (int d = 0; d < dim; ++d) {
            if (!(fields >> table.input_vectors.at(row, d))) {
                std::ostringstream os;
                os << path << ":" << lineno << ": expected " << dim << " values, found " << d;
                throw FormatError(os.str());
            }
        }
        double extra;
        if (fields >> extra) {
            std::ostringstream os;
            os << path << ":" << lineno << ": row has more than " << dim << " values";
            throw FormatError(os.str());
        }
        if (tokens_out) tokens_out->push_back(token);
        ++row;
    }
    if (row != vocab_size) {
        std::ostringstream os;
        os << path << ": header declares " << vocab_size << " rows but file holds " << row;
        throw FormatError(os.str());
    }
    return table;
}

int apply_pretrained_embeddings(const std::string& path, const Vocabulary& vocab,
                                Tensor2D& target) {
    std::vector<std::string> tokens;
    const EmbeddingTable table = load_embeddings(path, &tokens);
    if (table.dim != target.cols()) {
        std::ostringstream os;
        os << "apply_pretrained_embeddings: file dim " << table.dim
           << " does not match embedding dim " << target.cols();
        throw ConfigError(os.str());
    }
    int applied = 0;
    for (int row = 0; row < table.vocab_size; ++row) {
        const std::string& token = tokens[static_cast<std::size_t>(row)];
        if (!vocab.contains(token)) continue;
        const int id = vocab.id_of(token);
        if (id >= target.rows()) continue;
        for (int d = 0; d < table.dim; ++d) target.at(id, d) = table.input_vectors.at(row, d);
        ++applied;
    }
    return applied;
}

}  // namespace amsum
