#include <array>
#include <fstream>
#include <set>
#include <string>

#include <doctest.h>

#include "amsum/corpus.hpp"
#include "amsum/errors.hpp"
#include "helpers.hpp"

using amsum::RawExample;

namespace {

std::string write_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream os(path, std::ios::binary);
    os << content;
    return path.string();
}

}  // namespace

TEST_SUITE_BEGIN("corpus");

TEST_CASE("load_jsonl parses objects and counts skips") {
    auto dir = testutil::temp_dir("corpus_load");
    const std::string path = write_file(
        dir / "c.jsonl",
        "{\"article\": \"ሰላም ዓለም\", \"title\": \"ሰላም\", \"source\": \"https://x\"}\n"
        "{\"article\": \"  \", \"title\": \"whitespace only\"}\n"
        "{\"article\": \"ጽሑፍ ነው\", \"title\": \"ርዕስ ነው\"}\n"
        "\n");
    amsum::IngestStats stats;
    auto corpus = amsum::load_jsonl(path, &stats);
    REQUIRE(corpus.size() == 2);
    CHECK(corpus[0].article == "ሰላም ዓለም");
    CHECK(corpus[0].title == "ሰላም");
    CHECK(corpus[0].source == "https://x");
    CHECK(corpus[1].source.empty());
    CHECK(stats.lines_read == 4);  // includes the blank final line
    CHECK(stats.skipped_empty == 1);
}

TEST_CASE("load_jsonl trims surrounding whitespace") {
    auto dir = testutil::temp_dir("corpus_trim");
    const std::string path = write_file(
        dir / "c.jsonl", "{\"article\": \"  ዜና ነው \", \"title\": \"\\tርዕስ \"}\n");
    auto corpus = amsum::load_jsonl(path);
    REQUIRE(corpus.size() == 1);
    CHECK(corpus[0].article == "ዜና ነው");
    CHECK(corpus[0].title == "ርዕስ");
}

TEST_CASE("load_jsonl reports the failing line") {
    auto dir = testutil::temp_dir("corpus_bad");
    auto path = write_file(dir / "bad.jsonl",
                           "{\"article\": \"ok\", \"title\": \"ok title\"}\n"
                           "not json at all\n");
    try {
        amsum::load_jsonl(path);
        FAIL("expected FormatError");
    } catch (const amsum::FormatError& e) {
        const std::string msg = e.what();
        CHECK(msg.find(":2") != std::string::npos);
        CHECK(msg.find("bad.jsonl") != std::string::npos);
    }

    auto missing_title = write_file(dir / "mt.jsonl", "{\"article\": \"x\"}\n");
    CHECK_THROWS_AS(amsum::load_jsonl(missing_title), amsum::FormatError);
    auto wrong_type = write_file(dir / "wt.jsonl", "{\"article\": 5, \"title\": \"t\"}\n");
    CHECK_THROWS_AS(amsum::load_jsonl(wrong_type), amsum::FormatError);
    auto bad_utf8 = write_file(dir / "u.jsonl", "{\"article\": \"a\xFF\", \"title\": \"t\"}\n");
    CHECK_THROWS_AS(amsum::load_jsonl(bad_utf8), amsum::Error);
    CHECK_THROWS_AS(amsum::load_jsonl((dir / "absent.jsonl").string()), amsum::IoError);
}

TEST_CASE("save then load is the identity") {
    auto dir = testutil::temp_dir("corpus_rt");
    std::vector<RawExample> corpus{
        {"ጽሑፍ አንድ ነው", "ርዕስ አንድ", "https://a"},
        {"ጽሑፍ \"ሁለት\" ነው", "ርዕስ ሁለት", ""},
    };
    const std::string path = (dir / "rt.jsonl").string();
    amsum::save_jsonl(corpus, path);
    auto loaded = amsum::load_jsonl(path);
    REQUIRE(loaded.size() == corpus.size());
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(loaded[i].article == corpus[i].article);
        CHECK(loaded[i].title == corpus[i].title);
        CHECK(loaded[i].source == corpus[i].source);
    }
}

TEST_CASE("filter_by_title_length") {
    std::vector<RawExample> corpus{
        {"a", "ሀ ለ", ""},                    // 2 tokens
        {"b", "ሀ ለ ሐ መ ሠ", ""},             // 5
        {"c", "ሀ ለ ሐ መ ሠ ረ ሰ", ""},         // 7
    };
    CHECK(amsum::filter_by_title_length(corpus, 1).size() == 3);
    auto kept = amsum::filter_by_title_length(corpus, 5);
    REQUIRE(kept.size() == 2);
    CHECK(kept[0].article == "b");
    CHECK(kept[1].article == "c");
    CHECK(amsum::filter_by_title_length(corpus, 1000000).empty());
    CHECK_THROWS_AS(amsum::filter_by_title_length(corpus, 0), amsum::ArgumentError);
}

TEST_CASE("split_corpus partitions deterministically") {
    std::vector<RawExample> corpus;
    for (int i = 0; i < 10; ++i)
        corpus.push_back({"article " + std::to_string(i), "title " + std::to_string(i), ""});

    auto split = amsum::split_corpus(corpus, {0.8, 0.1, 0.1}, 42);
    CHECK(split.train.size() == 8);
    CHECK(split.val.size() == 1);
    CHECK(split.test.size() == 1);

    // Union is the corpus, no duplicates.
    std::set<std::string> seen;
    for (const auto* part : {&split.train, &split.val, &split.test})
        for (const auto& ex : *part) seen.insert(ex.article);
    CHECK(seen.size() == corpus.size());

    auto again = amsum::split_corpus(corpus, {0.8, 0.1, 0.1}, 42);
    CHECK(again.train[0].article == split.train[0].article);
    CHECK(again.test[0].article == split.test[0].article);

    auto other = amsum::split_corpus(corpus, {0.8, 0.1, 0.1}, 43);
    bool same = true;
    for (std::size_t i = 0; i < split.train.size(); ++i)
        same &= other.train[i].article == split.train[i].article;
    CHECK_FALSE(same);
}

TEST_CASE("split_corpus remainder goes to train") {
    std::vector<RawExample> corpus;
    for (int i = 0; i < 7; ++i)
        corpus.push_back({"a" + std::to_string(i), "t" + std::to_string(i), ""});
    auto split = amsum::split_corpus(corpus, {0.5, 0.25, 0.25}, 1);
    // floor(7*0.25) = 1 each for val/test, remainder 5 to train
    CHECK(split.val.size() == 1);
    CHECK(split.test.size() == 1);
    CHECK(split.train.size() == 5);
}

TEST_CASE("split_corpus validates inputs") {
    std::vector<RawExample> corpus{{"a", "t", ""}, {"b", "t", ""}, {"c", "t", ""}};
    CHECK_THROWS_AS(amsum::split_corpus(corpus, {0.5, 0.5, 0.5}, 1), amsum::ArgumentError);
    CHECK_THROWS_AS(amsum::split_corpus(corpus, {1.0, 0.0, 0.0}, 1), amsum::ArgumentError);
    std::vector<RawExample> tiny{{"a", "t", ""}, {"b", "t", ""}};
    CHECK_THROWS_AS(amsum::split_corpus(tiny, {0.8, 0.1, 0.1}, 1), amsum::CorpusError);
}

TEST_SUITE_END();
