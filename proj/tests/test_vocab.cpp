#include <fstream>
#include <string>
#include <vector>

#include <doctest.h>

#include "amsum/corpus.hpp"
#include "amsum/errors.hpp"
#include "amsum/vocab.hpp"
#include "helpers.hpp"

using amsum::RawExample;
using amsum::Vocabulary;

namespace {

std::vector<RawExample> corpus_of(const std::string& text) {
    return {{text, "dummy title here", ""}};
}

}  // namespace

TEST_SUITE_BEGIN("vocab");

TEST_CASE("reserved ids are fixed") {
    Vocabulary v;
    CHECK(v.size() == 4);
    CHECK(v.token_of(amsum::kPadId) == "<pad>");
    CHECK(v.token_of(amsum::kUnkId) == "<unk>");
    CHECK(v.token_of(amsum::kStartId) == "<start>");
    CHECK(v.token_of(amsum::kStopId) == "<stop>");
    CHECK(v.id_of("<unk>") == amsum::kUnkId);
    CHECK(v.id_of("absent") == amsum::kUnkId);
    CHECK_FALSE(v.contains("absent"));
    CHECK_THROWS_AS(v.token_of(4), amsum::IndexError);
    CHECK_THROWS_AS(v.token_of(-1), amsum::IndexError);
}

TEST_CASE("build_vocabulary applies min_count and frequency order") {
    // a x3, b x1 -> only a survives min_count 2
    auto vocab = amsum::build_vocabulary(corpus_of("a a a b"), 10, 2);
    CHECK(vocab.size() == 5);
    CHECK(vocab.id_of("a") == 4);
    CHECK_FALSE(vocab.contains("b"));
    CHECK(vocab.count_of("a") == 3);
}

TEST_CASE("ties break lexicographically") {
    auto vocab = amsum::build_vocabulary(corpus_of("b a b a"), 10, 1);
    CHECK(vocab.id_of("a") == 4);
    CHECK(vocab.id_of("b") == 5);
}

TEST_CASE("capacity counts reserved ids") {
    auto vocab = amsum::build_vocabulary(
        corpus_of("t0 t0 t0 t1 t1 t1 t2 t2 t3 t3 t4 t5 t6 t7 t8 t9"), 6, 1);
    CHECK(vocab.size() == 6);  // 4 reserved + 2 corpus tokens
    CHECK(vocab.contains("t0"));
    CHECK(vocab.contains("t1"));
    CHECK_FALSE(vocab.contains("t2"));
}

TEST_CASE("titles count toward frequencies") {
    std::vector<RawExample> corpus{{"x y", "x z", ""}};
    auto vocab = amsum::build_vocabulary(corpus, 10, 2);
    CHECK(vocab.contains("x"));  // once in article, once in title
    CHECK_FALSE(vocab.contains("y"));
}

TEST_CASE("build errors") {
    CHECK_THROWS_AS(amsum::build_vocabulary({}, 10, 1), amsum::CorpusError);
    CHECK_THROWS_AS(amsum::build_vocabulary(corpus_of("a"), 4, 1), amsum::ArgumentError);
}

TEST_CASE("round trip through id maps") {
    auto vocab = amsum::build_vocabulary(corpus_of("ሰላም ሰላም ዓለም ነው ነው ነው"), 20, 1);
    for (int id = 0; id < vocab.size(); ++id)
        CHECK(vocab.id_of(vocab.token_of(id)) == id);
}

TEST_CASE("surface resolves extended ids through the OOV list") {
    Vocabulary v;
    std::vector<std::string> oov{"ቃል", "ስም"};
    CHECK(v.surface(amsum::kUnkId, oov) == "<unk>");
    CHECK(v.surface(4, oov) == "ቃል");
    CHECK(v.surface(5, oov) == "ስም");
    CHECK_THROWS_AS(v.surface(6, oov), amsum::IndexError);
}

TEST_CASE("save and load round trip with header") {
    auto dir = testutil::temp_dir("vocab");
    auto vocab = amsum::build_vocabulary(corpus_of("ሰላም ሰላም ዓለም b b b a a"), 10, 2);
    const std::string path = (dir / "v.vocab").string();
    vocab.save(path);

    std::ifstream is(path);
    std::string header;
    std::getline(is, header);
    CHECK(header == "#vocab " + std::to_string(vocab.size()));
    std::string first_data;
    std::getline(is, first_data);
    CHECK(first_data.find('\t') != std::string::npos);

    Vocabulary loaded = Vocabulary::load(path);
    CHECK(loaded.size() == vocab.size());
    for (int id = 0; id < vocab.size(); ++id) {
        CHECK(loaded.token_of(id) == vocab.token_of(id));
        CHECK(loaded.count_of(loaded.token_of(id)) == vocab.count_of(vocab.token_of(id)));
    }
}

TEST_CASE("load rejects malformed files") {
    auto dir = testutil::temp_dir("vocab_bad");
    auto write = [&](const std::string& name, const std::string& content) {
        std::ofstream os(dir / name);
        os << content;
        return (dir / name).string();
    };
    CHECK_THROWS_AS(Vocabulary::load((dir / "missing.vocab").string()), amsum::IoError);
    CHECK_THROWS_AS(Vocabulary::load(write("h", "#nope 5\n")), amsum::FormatError);
    CHECK_THROWS_AS(Vocabulary::load(write("n", "#vocab 6\na\t2\n")), amsum::FormatError);
    CHECK_THROWS_AS(Vocabulary::load(write("c", "#vocab 5\na\n")), amsum::FormatError);
}

TEST_CASE("id_counts aligns with ids") {
    auto vocab = amsum::build_vocabulary(corpus_of("a a a b b c c"), 10, 2);
    auto counts = vocab.id_counts();
    CHECK(counts.size() == static_cast<std::size_t>(vocab.size()));
    for (int r = 0; r < amsum::kNumReserved; ++r) CHECK(counts[r] == 0);
    CHECK(counts[vocab.id_of("a")] == 3);
    CHECK(counts[vocab.id_of("b")] == 2);
}

TEST_SUITE_END();
