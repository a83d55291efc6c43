#include "amsum/encode.hpp"

#include <unordered_map>

#include "amsum/errors.hpp"
#include "amsum/text.hpp"

namespace amsum {

EncodedExample encode_example(const RawExample& raw, const Vocabulary& vocab, int max_enc_len,
                              int max_dec_len) {
    if (max_enc_len < 2 || max_dec_len < 2) {
        throw ArgumentError("encode_example: max lengths must be >= 2");
    }
    std::vector<std::string> article = tokenize(raw.article);
    std::vector<std::string> title = tokenize(raw.title);
    if (article.empty() || title.empty()) {
        throw ExampleRejectedError("encode_example: empty tokenized article or title");
    }
    if (static_cast<int>(article.size()) > max_enc_len) article.resize(max_enc_len);
    if (static_cast<int>(title.size()) > max_dec_len - 1) title.resize(max_dec_len - 1);

    const int vocab_size = vocab.size();
    EncodedExample ex;
    std::unordered_map<std::string, int> oov_ids;  // token -> extended id
    for (const std::string& tok : article) {
        if (vocab.contains(tok)) {
            const int id = vocab.id_of(tok);
            ex.encoder_ids.push_back(id);
            ex.encoder_extended_ids.push_back(id);
            continue;
        }
        auto it = oov_ids.find(tok);
        int ext;
        if (it == oov_ids.end()) {
            ext = vocab_size + static_cast<int>(ex.article_oov_tokens.size());
            oov_ids.emplace(tok, ext);
            ex.article_oov_tokens.push_back(tok);
        } else {
            ext = it->second;
        }
        ex.encoder_ids.push_back(kUnkId);
        ex.encoder_extended_ids.push_back(ext);
    }

    ex.decoder_input_ids.push_back(kStartId);
    for (const std::string& tok : title) {
        if (vocab.contains(tok)) {
            const int id = vocab.id_of(tok);
            ex.decoder_input_ids.push_back(id);
            ex.target_ids.push_back(id);
        } else {
            ex.decoder_input_ids.push_back(kUnkId);
            auto it = oov_ids.find(tok);
            ex.target_ids.push_back(it == oov_ids.end() ? kUnkId : it->second);
        }
    }
    ex.target_ids.push_back(kStopId);

    ex.enc_mask.assign(ex.encoder_ids.size(), 1);
    ex.dec_mask.assign(ex.decoder_input_ids.size(), 1);
    return ex;
}

EncodedExample encode_article(const std::string& article, const Vocabulary& vocab,
                              int max_enc_len) {
    if (max_enc_len < 2) {
        throw ArgumentError("encode_article: max_enc_len must be >= 2");
    }
    std::vector<std::string> tokens = tokenize(article);
    if (tokens.empty()) {
        throw ExampleRejectedError("encode_article: empty tokenized article");
    }
    if (static_cast<int>(tokens.size()) > max_enc_len) tokens.resize(max_enc_len);

    const int vocab_size = vocab.size();
    EncodedExample ex;
    std::unordered_map<std::string, int> oov_ids;
    for (const std::string& tok : tokens) {
        if (vocab.contains(tok)) {
            const int id = vocab.id_of(tok);
            ex.encoder_ids.push_back(id);
            ex.encoder_extended_ids.push_back(id);
            continue;
        }
        auto it = oov_ids.find(tok);
        int ext;
        if (it == oov_ids.end()) {
            ext = vocab_size + static_cast<int>(ex.article_oov_tokens.size());
            oov_ids.emplace(tok, ext);
            ex.article_oov_tokens.push_back(tok);
        } else {
            ext = it->second;
        }
        ex.encoder_ids.push_back(kUnkId);
        ex.encoder_extended_ids.push_back(ext);
    }
    ex.decoder_input_ids = {kStartId};
    ex.target_ids = {kStopId};
    ex.enc_mask.assign(ex.encoder_ids.size(), 1);
    ex.dec_mask = {1};
    return ex;
}

std::vector<std::string> ids_to_tokens(const std::vector<int>& ids, const Vocabulary& vocab,
                                       const std::vector<std::string>& oov_tokens) {
    std::vector<std::string> tokens;
    tokens.reserve(ids.size());
    for (int id : ids) tokens.push_back(vocab.surface(id, oov_tokens));
    return tokens;
}

std::vector<std::string> reference_tokens(const EncodedExample& ex, const Vocabulary& vocab) {
    std::vector<int> ids;
    for (std::size_t i = 0; i < ex.target_ids.size(); ++i) {
        if (i < ex.dec_mask.size() && !ex.dec_mask[i]) break;
        if (ex.target_ids[i] == kStopId) break;
        ids.push_back(ex.target_ids[i]);
    }
    return ids_to_tokens(ids, vocab, ex.article_oov_tokens);
}

}  // namespace amsum
