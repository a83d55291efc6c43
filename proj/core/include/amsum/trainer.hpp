#ifndef AMSUM_TRAINER_HPP
#define AMSUM_TRAINER_HPP

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "amsum/encode.hpp"
#include "amsum/model.hpp"
#include "amsum/rng.hpp"
#include "amsum/schedule.hpp"
#include "amsum/tensor.hpp"

namespace amsum {

/// How the model-fed branch of scheduled sampling picks a token.
enum class SamplingMode { kArgmax, kSample };

/// Scheduled-sampling input choice for one decoder step. With probability
/// epsilon the gold token is fed; otherwise a token drawn from the model's
/// previous output distribution (argmax or sampled). The draw never
/// backpropagates. epsilon >= 1 returns the gold token without consuming
/// randomness, so a run pinned to teacher forcing stays bit-identical to a
/// loop that never consults the sampler.
int sample_decoder_input(int gold_prev, const Tensor2D& model_dist_prev, double epsilon,
                         SamplingMode mode, Rng& rng);

struct TrainConfig {
    int batch_size = 8;
    int epochs = 10;
    double learning_rate = 0.15;
    double adagrad_init = 0.1;
    double grad_clip_norm = 2.0;
    DecaySchedule schedule;
    SamplingMode sampling = SamplingMode::kSample;
    std::uint64_t seed = 1;
    // Checkpoints are written only when checkpoint_dir is set: every
    // checkpoint_every steps (0 = none), after the final step, and whenever
    // validation loss improves.
    std::string checkpoint_dir;
    std::string run_name = "run";
    long long checkpoint_every = 0;
};

struct HistoryRow {
    long long step = 0;
    double epsilon = 0.0;
    double loss = 0.0;
};

struct TrainHistory {
    std::vector<HistoryRow> per_step;
    std::vector<double> epoch_mean_loss;
    std::vector<double> val_loss;  // one entry per epoch when a val set is given
};

/// CSV with header "step,epsilon,loss".
void save_history(const TrainHistory& history, const std::string& path);
std::vector<HistoryRow> load_history_rows(const std::string& path);

std::string checkpoint_path(const std::string& dir, const std::string& run_name,
                            long long step);

class Trainer {
public:
    explicit Trainer(TrainConfig config);

    /// One Adagrad step over the batch at the given epsilon; returns the
    /// batch mean per-token loss.
    double train_step(const std::vector<EncodedExample>& batch, ModelParams& params,
                      double epsilon);

    /// Pure teacher forcing: the gold token is always fed and the sampler is
    /// never consulted.
    double teacher_forced_step(const std::vector<EncodedExample>& batch,
                               ModelParams& params);

    /// Full run: per epoch, shuffle, sweep batches with epsilon from the
    /// schedule at the global step, then score the val set. One seeded
    /// stream drives shuffles and sampling flips.
    TrainHistory fit(const std::vector<EncodedExample>& train_set,
                     const std::vector<EncodedExample>& val_set, ModelParams& params);

    /// Teacher-forced mean loss without updates.
    static double evaluate_loss(const std::vector<EncodedExample>& examples,
                                const ModelParams& params);

    const TrainConfig& config() const { return config_; }

private:
    double run_step(const std::vector<EncodedExample>& batch, ModelParams& params,
                    double epsilon, bool teacher_forced);
    void apply_gradients(ModelParams& params,
                         std::map<std::string, Tensor2D>& grads);

    TrainConfig config_;
    Rng rng_;
    std::map<std::string, Tensor2D> adagrad_;
};

}  // namespace amsum

#endif  // AMSUM_TRAINER_HPP
