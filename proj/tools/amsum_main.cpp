#include <algorithm>
#include <array>
#include <cstdint>
#include <utility>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "amsum/corpus.hpp"
#include "amsum/embedding.hpp"
#include "amsum/encode.hpp"
#include "amsum/errors.hpp"
#include "amsum/evaluate.hpp"
#include "amsum/metrics.hpp"
#include "amsum/model.hpp"
#include "amsum/schedule.hpp"
#include "amsum/text.hpp"
#include "amsum/trainer.hpp"
#include "amsum/vocab.hpp"

namespace {

struct EncodeLimits {
    int max_enc_len = 400;
    int max_dec_len = 25;
};

std::vector<amsum::EncodedExample> encode_corpus(const std::vector<amsum::RawExample>& corpus,
                                                 const amsum::Vocabulary& vocab,
                                                 const EncodeLimits& limits,
                                                 std::size_t* rejected) {
    std::vector<amsum::EncodedExample> out;
    out.reserve(corpus.size());
    std::size_t skipped = 0;
    for (const amsum::RawExample& raw : corpus) {
        try {
            out.push_back(
                amsum::encode_example(raw, vocab, limits.max_enc_len, limits.max_dec_len));
        } catch (const amsum::ExampleRejectedError&) {
            ++skipped;
        }
    }
    if (rejected) *rejected = skipped;
    if (out.empty()) throw amsum::CorpusError("no usable examples after encoding");
    return out;
}

std::string read_text_argument(const std::string& value) {
    std::error_code ec;
    if (std::filesystem::is_regular_file(value, ec)) {
        std::ifstream is(value, std::ios::binary);
        if (!is) throw amsum::IoError("cannot open text file: " + value);
        std::ostringstream buf;
        buf << is.rdbuf();
        return buf.str();
    }
    return value;
}

std::string summarize_one(const std::string& checkpoint_path, const std::string& vocab_path,
                          const std::string& article, int beam_width, int max_len,
                          int max_enc_len) {
    const amsum::Vocabulary vocab = amsum::Vocabulary::load(vocab_path);
    const amsum::ModelParams params = amsum::load_checkpoint(checkpoint_path);
    const amsum::EncodedExample ex = amsum::encode_article(article, vocab, max_enc_len);
    amsum::EvalConfig config;
    config.beam_width = beam_width;
    config.max_len = max_len;
    return amsum::join_tokens(amsum::summarize_example(params, vocab, ex, config));
}

void add_config_option(CLI::App* cmd, std::string& sink) {
    cmd->add_option("--config", sink, "Key = value config file; flags win over its values");
}

std::string trim_ws(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::pair<std::string, std::string>> read_config_pairs(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw amsum::IoError("cannot open config file: " + path);
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        const std::string entry = trim_ws(line);
        if (entry.empty()) continue;
        const auto eq = entry.find('=');
        const std::string key = eq == std::string::npos ? "" : trim_ws(entry.substr(0, eq));
        if (key.empty())
            throw amsum::ConfigError(path + ":" + std::to_string(line_no) +
                                     ": expected key = value, got: " + entry);
        pairs.emplace_back(key, trim_ws(entry.substr(eq + 1)));
    }
    return pairs;
}

/// Rewrites the raw argument vector so config-file entries become --key=value
/// tokens for every option the command line leaves unset. Flags therefore win
/// over the file, and the file wins over defaults.
void apply_config_file(const CLI::App& app, std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].rfind("--config=", 0) == 0)
            path = args[i].substr(std::string("--config=").size());
    }
    if (path.empty() || args.empty() || args[0].empty() || args[0][0] == '-') return;
    const auto subs = app.get_subcommands(
        [&](const CLI::App* s) { return s->get_name() == args[0]; });
    if (subs.empty()) return;  // unknown subcommand; leave the usage error to the parser
    const CLI::App* sub = subs.front();

    for (const auto& [key, value] : read_config_pairs(path)) {
        if (key == "config")
            throw amsum::ConfigError(path + ": a config file cannot set 'config'");
        if (sub->get_option_no_throw("--" + key) == nullptr)
            throw amsum::ConfigError(path + ": unknown key '" + key + "' for " +
                                     sub->get_name());
        const std::string flag = "--" + key;
        bool given = false;
        for (std::size_t i = 1; i < args.size() && !given; ++i)
            given = args[i] == flag || args[i].rfind(flag + "=", 0) == 0;
        if (!given) args.push_back(flag + "=" + value);
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Amharic abstractive summarization pipeline"};
    app.name("amsum");
    app.require_subcommand(1);
    std::string config_path;

    // ingest
    std::string ing_in, ing_out;
    int ing_min_title = 5;
    CLI::App* ingest = app.add_subcommand(
        "ingest", "Validate a JSONL corpus and drop examples with short titles");
    add_config_option(ingest, config_path);
    ingest->add_option("--in", ing_in, "Input JSONL with article/title fields")->required();
    ingest->add_option("--out", ing_out, "Filtered JSONL output")->required();
    ingest->add_option("--min-title-tokens", ing_min_title, "Minimum title token count")
        ->capture_default_str();
    ingest->callback([&] {
        amsum::IngestStats stats;
        const auto corpus = amsum::load_jsonl(ing_in, &stats);
        const auto kept = amsum::filter_by_title_length(corpus, ing_min_title);
        amsum::save_jsonl(kept, ing_out);
        std::cerr << "ingest: read " << stats.lines_read << " lines, skipped "
                  << stats.skipped_empty << " empty, dropped "
                  << (corpus.size() - kept.size()) << " short titles, kept " << kept.size()
                  << "\n";
    });

    // build-vocab
    std::string bv_in, bv_out;
    int bv_max_size = 50000;
    int bv_min_count = 2;
    CLI::App* build_vocab =
        app.add_subcommand("build-vocab", "Count tokens and write the vocabulary file");
    add_config_option(build_vocab, config_path);
    build_vocab->add_option("--in", bv_in, "Input JSONL")->required();
    build_vocab->add_option("--out", bv_out, "Vocabulary output path")->required();
    build_vocab->add_option("--max-size", bv_max_size, "Vocabulary capacity incl. reserved ids")
        ->capture_default_str();
    build_vocab->add_option("--min-count", bv_min_count, "Minimum token frequency")
        ->capture_default_str();
    build_vocab->callback([&] {
        const auto corpus = amsum::load_jsonl(bv_in);
        const auto vocab = amsum::build_vocabulary(corpus, bv_max_size, bv_min_count);
        vocab.save(bv_out);
        std::cerr << "build-vocab: " << vocab.size() << " entries\n";
    });

    // train-embedding
    std::string te_in, te_vocab, te_out;
    amsum::SkipGramConfig sg;
    CLI::App* train_emb =
        app.add_subcommand("train-embedding", "Train skip-gram embeddings on the corpus");
    add_config_option(train_emb, config_path);
    train_emb->add_option("--in", te_in, "Input JSONL")->required();
    train_emb->add_option("--vocab", te_vocab, "Vocabulary file")->required();
    train_emb->add_option("--out", te_out, "Embedding output path")->required();
    train_emb->add_option("--dim", sg.dim, "Embedding width")->capture_default_str();
    train_emb->add_option("--window", sg.window, "Context window")->capture_default_str();
    train_emb->add_option("--negatives", sg.negatives, "Negative samples per pair")
        ->capture_default_str();
    train_emb->add_option("--epochs", sg.epochs, "Training epochs")->capture_default_str();
    train_emb->add_option("--lr", sg.learning_rate, "Initial learning rate")
        ->capture_default_str();
    train_emb->add_option("--seed", sg.seed, "RNG seed")->capture_default_str();
    train_emb->callback([&] {
        const auto corpus = amsum::load_jsonl(te_in);
        const auto vocab = amsum::Vocabulary::load(te_vocab);
        std::vector<std::vector<int>> sentences;
        sentences.reserve(2 * corpus.size());
        for (const amsum::RawExample& raw : corpus) {
            for (const std::string* text : {&raw.article, &raw.title}) {
                std::vector<int> ids;
                for (const std::string& tok : amsum::tokenize(*text))
                    if (vocab.contains(tok)) ids.push_back(vocab.id_of(tok));
                if (ids.size() >= 2) sentences.push_back(std::move(ids));
            }
        }
        const auto result = amsum::train_skipgram(sentences, vocab, sg);
        amsum::save_embeddings(result.table, vocab, te_out);
        std::cerr << "train-embedding: " << sentences.size() << " sequences";
        for (std::size_t e = 0; e < result.epoch_mean_loss.size(); ++e)
            std::cerr << ", epoch " << e << " loss " << result.epoch_mean_loss[e];
        std::cerr << "\n";
    });

    // train
    std::string tr_in, tr_val, tr_vocab, tr_emb, tr_out, tr_history, tr_run_name;
    std::string tr_schedule = "invsig", tr_sampling = "sample";
    EncodeLimits tr_limits;
    amsum::TrainConfig tc;
    amsum::ModelConfig mc;
    bool tr_no_pointer = false;
    double tr_k = 70.0, tr_c = 0.0, tr_eps_min = 0.05;
    CLI::App* train = app.add_subcommand("train", "Train the summarizer");
    add_config_option(train, config_path);
    train->add_option("--in", tr_in, "Training JSONL")->required();
    train->add_option("--val", tr_val, "Validation JSONL");
    train->add_option("--vocab", tr_vocab, "Vocabulary file")->required();
    train->add_option("--embeddings", tr_emb, "Pretrained embedding file");
    train->add_option("--out", tr_out, "Final checkpoint path")->required();
    train->add_option("--history", tr_history, "Per-step loss CSV");
    train->add_option("--max-enc-len", tr_limits.max_enc_len, "Article token cap")
        ->capture_default_str();
    train->add_option("--max-dec-len", tr_limits.max_dec_len, "Title token cap incl. STOP")
        ->capture_default_str();
    train->add_option("--emb-dim", mc.emb_dim, "Embedding width (ignored with --embeddings)")
        ->capture_default_str();
    train->add_option("--hidden", mc.hidden_dim, "LSTM hidden width")->capture_default_str();
    train->add_option("--attn", mc.attn_dim, "Attention width")->capture_default_str();
    train->add_flag("--no-pointer", tr_no_pointer,
                    "Disable the copy head (plain attention seq2seq)");
    train->add_option("--schedule", tr_schedule,
                      "Decay schedule: linear|exp|invsig|const")
        ->capture_default_str();
    train->add_option("--k", tr_k, "Schedule k")->capture_default_str();
    train->add_option("--c", tr_c, "Linear schedule slope")->capture_default_str();
    train->add_option("--eps-min", tr_eps_min, "Epsilon floor")->capture_default_str();
    train->add_option("--sampling", tr_sampling, "Model-branch choice: argmax|sample")
        ->capture_default_str();
    train->add_option("--batch-size", tc.batch_size, "Batch size")->capture_default_str();
    train->add_option("--epochs", tc.epochs, "Epochs")->capture_default_str();
    train->add_option("--lr", tc.learning_rate, "Adagrad learning rate")
        ->capture_default_str();
    train->add_option("--clip", tc.grad_clip_norm, "Global gradient norm cap")
        ->capture_default_str();
    train->add_option("--seed", tc.seed, "RNG seed (also seeds init)")
        ->capture_default_str();
    train->add_option("--checkpoint-every", tc.checkpoint_every,
                      "Write a checkpoint every N steps (0 = only final)")
        ->capture_default_str();
    train->add_option("--run-name", tr_run_name, "Checkpoint base name (default: out stem)");
    train->callback([&] {
        const auto vocab = amsum::Vocabulary::load(tr_vocab);
        std::size_t rejected = 0;
        const auto train_set =
            encode_corpus(amsum::load_jsonl(tr_in), vocab, tr_limits, &rejected);
        std::vector<amsum::EncodedExample> val_set;
        if (!tr_val.empty()) {
            std::size_t val_rejected = 0;
            val_set = encode_corpus(amsum::load_jsonl(tr_val), vocab, tr_limits, &val_rejected);
        }

        mc.vocab_size = vocab.size();
        mc.use_pointer = !tr_no_pointer;
        mc.seed = tc.seed;
        if (!tr_emb.empty()) {
            const amsum::EmbeddingTable table = amsum::load_embeddings(tr_emb, nullptr);
            mc.emb_dim = table.dim;
        }
        amsum::ModelParams params = amsum::init_model(mc);
        if (!tr_emb.empty()) {
            const int applied =
                amsum::apply_pretrained_embeddings(tr_emb, vocab, params.embedding);
            std::cerr << "train: applied " << applied << " pretrained embedding rows\n";
        }

        tc.schedule.kind = amsum::schedule_kind_from_name(tr_schedule);
        tc.schedule.k = tr_k;
        tc.schedule.c = tr_c;
        tc.schedule.eps_min = tr_eps_min;
        if (tr_sampling == "argmax")
            tc.sampling = amsum::SamplingMode::kArgmax;
        else if (tr_sampling == "sample")
            tc.sampling = amsum::SamplingMode::kSample;
        else
            throw amsum::ConfigError("unknown sampling mode: " + tr_sampling);
        const std::filesystem::path out_path(tr_out);
        tc.run_name = tr_run_name.empty() ? out_path.stem().string() : tr_run_name;
        if (tc.checkpoint_every > 0)
            tc.checkpoint_dir = out_path.has_parent_path()
                                    ? out_path.parent_path().string()
                                    : std::string(".");

        amsum::Trainer trainer(tc);
        const amsum::TrainHistory history = trainer.fit(train_set, val_set, params);
        amsum::save_checkpoint(params, tr_out);
        if (!tr_history.empty()) amsum::save_history(history, tr_history);

        std::cerr << "train: " << train_set.size() << " examples (" << rejected
                  << " rejected), " << history.per_step.size() << " steps";
        if (!history.epoch_mean_loss.empty())
            std::cerr << ", final epoch loss " << history.epoch_mean_loss.back();
        if (!history.val_loss.empty())
            std::cerr << ", final val loss " << history.val_loss.back();
        std::cerr << "\n";
    });

    // evaluate
    std::string ev_ckpt, ev_vocab, ev_test, ev_report;
    EncodeLimits ev_limits;
    int ev_beam = 4;
    int ev_max_len = 25;
    CLI::App* evaluate =
        app.add_subcommand("evaluate", "Decode a test set and report BLEU/ROUGE");
    add_config_option(evaluate, config_path);
    evaluate->add_option("--checkpoint", ev_ckpt, "Model checkpoint")->required();
    evaluate->add_option("--vocab", ev_vocab, "Vocabulary file")->required();
    evaluate->add_option("--test", ev_test, "Test JSONL")->required();
    evaluate->add_option("--report", ev_report, "Report JSON output path");
    evaluate->add_option("--beam", ev_beam, "Beam width")->capture_default_str();
    evaluate->add_option("--max-len", ev_max_len, "Decode length cap")->capture_default_str();
    evaluate->add_option("--max-enc-len", ev_limits.max_enc_len, "Article token cap")
        ->capture_default_str();
    evaluate->add_option("--max-dec-len", ev_limits.max_dec_len, "Title token cap")
        ->capture_default_str();
    evaluate->callback([&] {
        const auto vocab = amsum::Vocabulary::load(ev_vocab);
        const amsum::ModelParams params = amsum::load_checkpoint(ev_ckpt);
        const auto test_set = encode_corpus(amsum::load_jsonl(ev_test), vocab, ev_limits, nullptr);
        amsum::EvalConfig config;
        config.beam_width = ev_beam;
        config.max_len = ev_max_len;
        const amsum::CorpusReport report =
            amsum::evaluate_corpus(params, vocab, test_set, config);
        if (!ev_report.empty()) amsum::save_report(report, ev_report);
        std::cout << amsum::report_to_text(report);
    });

    // summarize
    std::string su_ckpt, su_vocab, su_text;
    int su_beam = 4;
    int su_max_len = 25;
    int su_max_enc_len = 400;
    CLI::App* summarize = app.add_subcommand("summarize", "Summarize one article");
    add_config_option(summarize, config_path);
    summarize->add_option("--checkpoint", su_ckpt, "Model checkpoint")->required();
    summarize->add_option("--vocab", su_vocab, "Vocabulary file")->required();
    summarize->add_option("--text", su_text, "Article text, or a path to a text file")
        ->required();
    summarize->add_option("--beam", su_beam, "Beam width")->capture_default_str();
    summarize->add_option("--max-len", su_max_len, "Decode length cap")
        ->capture_default_str();
    summarize->add_option("--max-enc-len", su_max_enc_len, "Article token cap")
        ->capture_default_str();
    summarize->callback([&] {
        const std::string article = read_text_argument(su_text);
        std::cout << summarize_one(su_ckpt, su_vocab, article, su_beam, su_max_len,
                                   su_max_enc_len)
                  << "\n";
    });

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        apply_config_file(app, args);
        std::reverse(args.begin(), args.end());
        app.parse(std::move(args));
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const amsum::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
