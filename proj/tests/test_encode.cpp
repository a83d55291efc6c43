#include <string>
#include <vector>

#include <doctest.h>

#include "amsum/corpus.hpp"
#include "amsum/encode.hpp"
#include "amsum/errors.hpp"
#include "amsum/vocab.hpp"

using amsum::EncodedExample;
using amsum::RawExample;
using amsum::Vocabulary;

namespace {

// Vocabulary with tokens w0..w5 at ids 4..9.
Vocabulary toy_vocab() {
    std::vector<std::pair<std::string, std::int64_t>> entries;
    for (int i = 0; i < 6; ++i) entries.emplace_back("w" + std::to_string(i), 10 - i);
    return Vocabulary::from_counted(entries);
}

}  // namespace

TEST_SUITE_BEGIN("encode");

TEST_CASE("in-vocab example has no extensions") {
    Vocabulary vocab = toy_vocab();
    EncodedExample ex = amsum::encode_example({"w0 w1 w2", "w1 w2", ""}, vocab, 10, 10);
    CHECK(ex.encoder_ids == std::vector<int>{4, 5, 6});
    CHECK(ex.encoder_extended_ids == ex.encoder_ids);
    CHECK(ex.article_oov_tokens.empty());
    CHECK(ex.decoder_input_ids == std::vector<int>{amsum::kStartId, 5, 6});
    CHECK(ex.target_ids == std::vector<int>{5, 6, amsum::kStopId});
    CHECK(ex.enc_mask == std::vector<std::uint8_t>{1, 1, 1});
    CHECK(ex.dec_mask == std::vector<std::uint8_t>{1, 1, 1});
}

TEST_CASE("article OOVs get first-occurrence extended ids") {
    Vocabulary vocab = toy_vocab();  // size 10
    EncodedExample ex = amsum::encode_example({"x q y q", "w0 w0", ""}, vocab, 10, 10);
    CHECK(vocab.size() == 10);
    CHECK(ex.encoder_ids == std::vector<int>(4, amsum::kUnkId));
    CHECK(ex.encoder_extended_ids == std::vector<int>{10, 11, 12, 11});
    CHECK(ex.article_oov_tokens == std::vector<std::string>{"x", "q", "y"});
    for (int id : ex.encoder_extended_ids)
        CHECK(id < vocab.size() + ex.n_oov());
}

TEST_CASE("title OOV present in article copies its extended id, absent goes UNK") {
    Vocabulary vocab = toy_vocab();
    EncodedExample ex = amsum::encode_example({"w0 q w1", "q z w1", ""}, vocab, 10, 10);
    CHECK(ex.article_oov_tokens == std::vector<std::string>{"q"});
    CHECK(ex.target_ids[0] == 10);             // q -> article extended id
    CHECK(ex.target_ids[1] == amsum::kUnkId);  // z absent from article
    CHECK(ex.target_ids[2] == vocab.id_of("w1"));
    CHECK(ex.target_ids[3] == amsum::kStopId);
    // Decoder inputs stay in the base vocabulary.
    CHECK(ex.decoder_input_ids ==
          std::vector<int>{amsum::kStartId, amsum::kUnkId, amsum::kUnkId, vocab.id_of("w1")});
}

TEST_CASE("truncation caps both sides") {
    Vocabulary vocab = toy_vocab();
    EncodedExample ex =
        amsum::encode_example({"w0 w1 w2 w3 w4 w5", "w0 w1 w2 w3 w4", ""}, vocab, 4, 3);
    CHECK(ex.enc_len() == 4);
    CHECK(ex.encoder_ids == std::vector<int>{4, 5, 6, 7});
    // Title capped at max_dec_len - 1 = 2 tokens plus STOP.
    CHECK(ex.dec_len() == 3);
    CHECK(ex.target_ids == std::vector<int>{4, 5, amsum::kStopId});
}

TEST_CASE("decoder target is the input shifted left plus STOP") {
    Vocabulary vocab = toy_vocab();
    EncodedExample ex = amsum::encode_example({"w0", "w3 w4 w5", ""}, vocab, 10, 10);
    REQUIRE(ex.decoder_input_ids.size() == ex.target_ids.size());
    for (std::size_t t = 1; t < ex.decoder_input_ids.size(); ++t)
        CHECK(ex.decoder_input_ids[t] == ex.target_ids[t - 1]);
    CHECK(ex.target_ids.back() == amsum::kStopId);
}

TEST_CASE("empty sides are rejected") {
    Vocabulary vocab = toy_vocab();
    CHECK_THROWS_AS(amsum::encode_example({"", "w0 w1", ""}, vocab, 10, 10),
                    amsum::ExampleRejectedError);
    CHECK_THROWS_AS(amsum::encode_example({"w0", "   ", ""}, vocab, 10, 10),
                    amsum::ExampleRejectedError);
    CHECK_THROWS_AS(amsum::encode_example({"w0", "w1", ""}, vocab, 1, 10),
                    amsum::ArgumentError);
}

TEST_CASE("encode_article builds the encoder side only") {
    Vocabulary vocab = toy_vocab();
    EncodedExample ex = amsum::encode_article("w0 q w1 q", vocab, 10);
    CHECK(ex.encoder_ids == std::vector<int>{4, amsum::kUnkId, 5, amsum::kUnkId});
    CHECK(ex.encoder_extended_ids == std::vector<int>{4, 10, 5, 10});
    CHECK(ex.article_oov_tokens == std::vector<std::string>{"q"});
    CHECK(ex.decoder_input_ids == std::vector<int>{amsum::kStartId});
    CHECK_THROWS_AS(amsum::encode_article(" ", vocab, 10), amsum::ExampleRejectedError);
}

TEST_CASE("ids_to_tokens and reference_tokens invert the encoding") {
    Vocabulary vocab = toy_vocab();
    EncodedExample ex = amsum::encode_example({"w0 q w1", "q z w1", ""}, vocab, 10, 10);
    auto ref = amsum::reference_tokens(ex, vocab);
    // q copies through, z was never copyable -> UNK surface, STOP stripped.
    CHECK(ref == std::vector<std::string>{"q", "<unk>", "w1"});

    auto toks = amsum::ids_to_tokens({4, 10, amsum::kStopId}, vocab, ex.article_oov_tokens);
    CHECK(toks == std::vector<std::string>{"w0", "q", "<stop>"});
    CHECK_THROWS_AS(amsum::ids_to_tokens({11}, vocab, ex.article_oov_tokens),
                    amsum::IndexError);
}

TEST_CASE("Ge'ez text round-trips through encoding") {
    std::vector<RawExample> corpus{{"ሰላም ዓለም ። ዛሬ ጥሩ ቀን ነው ።", "ሰላም ዓለም", ""}};
    Vocabulary vocab = amsum::build_vocabulary(corpus, 20, 1);
    EncodedExample ex = amsum::encode_example(corpus[0], vocab, 50, 10);
    CHECK(ex.article_oov_tokens.empty());
    CHECK(amsum::reference_tokens(ex, vocab) == std::vector<std::string>{"ሰላም", "ዓለም"});
}

TEST_SUITE_END();
