#include "amsum/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <limits>
#include <numeric>
#include <sstream>

#include "amsum/errors.hpp"
#include "amsum/vocab.hpp"

namespace amsum {

int sample_decoder_input(int gold_prev, const Tensor2D& model_dist_prev, double epsilon,
                         SamplingMode mode, Rng& rng) {
    if (model_dist_prev.rows() != 1 || model_dist_prev.cols() < 1)
        throw ArgumentError("model distribution must be a non-empty row vector");
    double sum = 0.0;
    for (double p : model_dist_prev.raw()) sum += p;
    if (std::abs(sum - 1.0) > 1e-6)
        throw ArgumentError("model distribution sums to " + std::to_string(sum) +
                            ", expected 1");
    if (epsilon < 0.0 || epsilon > 1.0)
        throw ArgumentError("epsilon must lie in [0, 1], got " + std::to_string(epsilon));
    if (gold_prev < 0) throw IndexError("gold token id must be non-negative");
    if (epsilon >= 1.0) return gold_prev;

    if (rng.uniform01() < epsilon) return gold_prev;
    if (mode == SamplingMode::kArgmax) {
        int best = 0;
        for (int w = 1; w < model_dist_prev.cols(); ++w)
            if (model_dist_prev.at(0, w) > model_dist_prev.at(0, best)) best = w;
        return best;
    }
    return static_cast<int>(rng.categorical(model_dist_prev.raw()));
}

void save_history(const TrainHistory& history, const std::string& path) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open history for writing: " + path);
    os << "step,epsilon,loss\n" << std::setprecision(12);
    for (const HistoryRow& row : history.per_step)
        os << row.step << ',' << row.epsilon << ',' << row.loss << '\n';
    if (!os) throw IoError("failed writing history: " + path);
}

std::vector<HistoryRow> load_history_rows(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw IoError("cannot open history: " + path);
    std::string line;
    if (!std::getline(is, line) || line != "step,epsilon,loss")
        throw FormatError(path + ": bad history header");
    std::vector<HistoryRow> rows;
    int line_no = 1;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty()) continue;
        std::istringstream ls(line);
        HistoryRow row;
        char c1 = 0, c2 = 0;
        if (!(ls >> row.step >> c1 >> row.epsilon >> c2 >> row.loss) || c1 != ',' ||
            c2 != ',')
            throw FormatError(path + ":" + std::to_string(line_no) +
                              ": bad history row: " + line);
        rows.push_back(row);
    }
    return rows;
}

std::string checkpoint_path(const std::string& dir, const std::string& run_name,
                            long long step) {
    std::ostringstream name;
    name << run_name << ".step" << std::setfill('0') << std::setw(6) << step << ".ckpt";
    return (std::filesystem::path(dir) / name.str()).string();
}

namespace {

using InputChooser = std::function<int(int t, int gold, const Tensor2D& prev_dist)>;

void check_example(const EncodedExample& ex, const ModelConfig& cfg) {
    const int ext = cfg.vocab_size + ex.n_oov();
    for (int id : ex.encoder_ids)
        if (id < 0 || id >= cfg.vocab_size)
            throw ConfigError("encoder id " + std::to_string(id) +
                              " does not fit a vocabulary of size " +
                              std::to_string(cfg.vocab_size));
    for (int id : ex.target_ids)
        if (id < 0 || id >= ext)
            throw ConfigError("target id " + std::to_string(id) +
                              " does not fit the extended vocabulary of size " +
                              std::to_string(ext));
}

Var build_example_loss(SummarizerGraph& model, const EncodedExample& ex,
                       const InputChooser& choose) {
    Graph& g = model.graph();
    auto enc = model.encode(ex.encoder_ids, ex.enc_mask);
    auto state = model.initial_state(enc);
    const bool pointer = model.config().use_pointer;

    std::vector<Var> step_losses;
    Tensor2D prev_dist;
    const int dec_len = ex.dec_len();
    for (int t = 0; t < dec_len && ex.dec_mask[t]; ++t) {
        const int input =
            t == 0 ? ex.decoder_input_ids[0] : choose(t, ex.decoder_input_ids[t], prev_dist);
        auto out = model.decode_step(input, state, enc);
        Var dist = model.final_distribution(out, ex.encoder_extended_ids, ex.n_oov());
        int target = ex.target_ids[t];
        if (!pointer && target >= model.config().vocab_size) target = kUnkId;
        step_losses.push_back(g.nll(dist, target));
        prev_dist = g.value(dist);  // detached copy; sampling never backpropagates
        state = out.next;
    }
    if (step_losses.empty()) throw ArgumentError("example has no unpadded decoder steps");
    Var total = step_losses[0];
    for (std::size_t i = 1; i < step_losses.size(); ++i)
        total = g.add(total, step_losses[i]);
    return g.scale(total, 1.0 / static_cast<double>(step_losses.size()));
}

}  // namespace

Trainer::Trainer(TrainConfig config) : config_(std::move(config)), rng_(config_.seed) {
    if (config_.batch_size < 1) throw ArgumentError("batch_size must be at least 1");
    if (config_.epochs < 0) throw ArgumentError("epochs must be non-negative");
    if (config_.learning_rate <= 0.0) throw ArgumentError("learning_rate must be positive");
    if (config_.adagrad_init <= 0.0) throw ArgumentError("adagrad_init must be positive");
    if (config_.grad_clip_norm <= 0.0)
        throw ArgumentError("grad_clip_norm must be positive");
    validate_schedule(config_.schedule);
}

double Trainer::run_step(const std::vector<EncodedExample>& batch, ModelParams& params,
                         double epsilon, bool teacher_forced) {
    if (batch.empty()) throw ArgumentError("train_step needs a non-empty batch");
    for (const EncodedExample& ex : batch) check_example(ex, params.config);

    Graph g;
    SummarizerGraph model(g, params, true);
    InputChooser choose;
    if (teacher_forced) {
        choose = [](int, int gold, const Tensor2D&) { return gold; };
    } else {
        choose = [this, epsilon](int, int gold, const Tensor2D& prev) {
            return sample_decoder_input(gold, prev, epsilon, config_.sampling, rng_);
        };
    }

    Var total = build_example_loss(model, batch[0], choose);
    for (std::size_t i = 1; i < batch.size(); ++i)
        total = g.add(total, build_example_loss(model, batch[i], choose));
    Var loss = g.scale(total, 1.0 / static_cast<double>(batch.size()));
    g.backward(loss);

    std::map<std::string, Tensor2D> grads;
    for (const auto& [name, var] : model.bound_params()) grads.emplace(name, g.grad(var));
    apply_gradients(params, grads);
    return g.value(loss).at(0, 0);
}

double Trainer::train_step(const std::vector<EncodedExample>& batch, ModelParams& params,
                           double epsilon) {
    return run_step(batch, params, epsilon, false);
}

double Trainer::teacher_forced_step(const std::vector<EncodedExample>& batch,
                                    ModelParams& params) {
    return run_step(batch, params, 1.0, true);
}

void Trainer::apply_gradients(ModelParams& params,
                              std::map<std::string, Tensor2D>& grads) {
    double sq_norm = 0.0;
    for (const auto& [name, g] : grads)
        for (double v : g.raw()) sq_norm += v * v;
    const double norm = std::sqrt(sq_norm);
    const double scale =
        norm > config_.grad_clip_norm ? config_.grad_clip_norm / norm : 1.0;

    for_each_param(params, [&](const std::string& name, Tensor2D& p) {
        Tensor2D& g = grads.at(name);
        auto acc_it = adagrad_.find(name);
        if (acc_it == adagrad_.end())
            acc_it = adagrad_
                         .emplace(name, Tensor2D::filled(p.rows(), p.cols(),
                                                         config_.adagrad_init))
                         .first;
        Tensor2D& acc = acc_it->second;
        for (std::size_t i = 0; i < p.raw().size(); ++i) {
            const double gv = g.raw()[i] * scale;
            acc.raw()[i] += gv * gv;
            p.raw()[i] -= config_.learning_rate * gv / std::sqrt(acc.raw()[i]);
        }
    });
}

TrainHistory Trainer::fit(const std::vector<EncodedExample>& train_set,
                          const std::vector<EncodedExample>& val_set,
                          ModelParams& params) {
    if (train_set.empty()) throw ArgumentError("fit needs a non-empty training set");
    TrainHistory history;
    std::vector<std::size_t> order(train_set.size());
    std::iota(order.begin(), order.end(), 0);

    const bool writing = !config_.checkpoint_dir.empty();
    if (writing) std::filesystem::create_directories(config_.checkpoint_dir);
    double best_val = std::numeric_limits<double>::infinity();
    long long step = 0;

    for (int epoch = 0; epoch < config_.epochs; ++epoch) {
        rng_.shuffle(order);
        double epoch_sum = 0.0;
        int epoch_steps = 0;
        for (std::size_t begin = 0; begin < order.size();
             begin += static_cast<std::size_t>(config_.batch_size)) {
            const std::size_t end =
                std::min(order.size(), begin + static_cast<std::size_t>(config_.batch_size));
            std::vector<EncodedExample> batch;
            batch.reserve(end - begin);
            for (std::size_t i = begin; i < end; ++i) batch.push_back(train_set[order[i]]);

            const double eps = epsilon_at(config_.schedule, step);
            const double loss = train_step(batch, params, eps);
            history.per_step.push_back({step, eps, loss});
            epoch_sum += loss;
            ++epoch_steps;
            ++step;
            if (writing && config_.checkpoint_every > 0 &&
                step % config_.checkpoint_every == 0)
                save_checkpoint(params,
                                checkpoint_path(config_.checkpoint_dir, config_.run_name,
                                                step));
        }
        history.epoch_mean_loss.push_back(epoch_sum / std::max(1, epoch_steps));
        if (!val_set.empty()) {
            const double vl = evaluate_loss(val_set, params);
            history.val_loss.push_back(vl);
            if (writing && vl < best_val) {
                best_val = vl;
                save_checkpoint(params, (std::filesystem::path(config_.checkpoint_dir) /
                                         (config_.run_name + ".best.ckpt"))
                                            .string());
            }
        }
    }
    if (writing && step > 0)
        save_checkpoint(params,
                        checkpoint_path(config_.checkpoint_dir, config_.run_name, step));
    return history;
}

double Trainer::evaluate_loss(const std::vector<EncodedExample>& examples,
                              const ModelParams& params) {
    if (examples.empty()) throw ArgumentError("evaluate_loss needs at least one example");
    double sum = 0.0;
    for (const EncodedExample& ex : examples) {
        check_example(ex, params.config);
        Graph g;
        SummarizerGraph model(g, params, false);
        Var loss = build_example_loss(
            model, ex, [](int, int gold, const Tensor2D&) { return gold; });
        sum += g.value(loss).at(0, 0);
    }
    // Multiply by the reciprocal, matching the graph's scale node, so the
    // result is bit-identical to the loss a training step reports.
    return sum * (1.0 / static_cast<double>(examples.size()));
}

}  // namespace amsum
