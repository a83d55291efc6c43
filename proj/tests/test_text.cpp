#include <string>
#include <vector>

#include <doctest.h>

#include "amsum/errors.hpp"
#include "amsum/text.hpp"

using amsum::tokenize;
using Toks = std::vector<std::string>;

TEST_SUITE_BEGIN("text");

TEST_CASE("decode_utf8 walks codepoints") {
    std::string s = "aሀ€\xF0\x9F\x98\x80";  // 1-, 3-, 3-, 4-byte sequences
    std::size_t pos = 0;
    CHECK(amsum::decode_utf8(s, pos) == U'a');
    CHECK(amsum::decode_utf8(s, pos) == char32_t(0x1200));
    CHECK(amsum::decode_utf8(s, pos) == char32_t(0x20AC));
    CHECK(amsum::decode_utf8(s, pos) == char32_t(0x1F600));
    CHECK(pos == s.size());
}

TEST_CASE("invalid UTF-8 reports the byte offset") {
    auto offset_of = [](const std::string& s) -> std::string {
        try {
            amsum::validate_utf8(s);
        } catch (const amsum::EncodingError& e) {
            return e.what();
        }
        return "";
    };
    CHECK(offset_of("ab\xFF") .find("offset 2") != std::string::npos);
    CHECK(offset_of("\x80") .find("offset 0") != std::string::npos);
    // Truncated multi-byte sequence.
    CHECK(offset_of("ab\xE1\x88") .find("offset 2") != std::string::npos);
    // Overlong encoding of '/'.
    CHECK(offset_of(std::string("\xC0\xAF")).find("offset 0") != std::string::npos);
    // UTF-16 surrogate D800.
    CHECK(offset_of(std::string("\xED\xA0\x80")).find("offset 0") != std::string::npos);
    // Above U+10FFFF.
    CHECK(offset_of(std::string("\xF4\x90\x80\x80")).find("offset 0") != std::string::npos);
    CHECK_NOTHROW(amsum::validate_utf8("ሰላም ዓለም"));
}

TEST_CASE("tokenize splits on spaces and Ethiopic punctuation") {
    CHECK(tokenize("ሰላም። እንዴት ነህ") == Toks{"ሰላም", "።", "እንዴት", "ነህ"});
    CHECK(tokenize("ሀገር፡ቤት") == Toks{"ሀገር", "ቤት"});  // wordspace dropped
    CHECK(tokenize("") == Toks{});
    CHECK(tokenize("   \t\n ") == Toks{});
    CHECK(tokenize("ሀ፣ለ፤ሐ፥መ፦ሠ፧ረ") ==
          Toks{"ሀ", "፣", "ለ", "፤", "ሐ", "፥", "መ", "፦", "ሠ", "፧", "ረ"});
}

TEST_CASE("tokenize keeps ASCII punctuation as tokens") {
    CHECK(tokenize("abc.def") == Toks{"abc", ".", "def"});
    CHECK(tokenize("(ሀገር)") == Toks{"(", "ሀገር", ")"});
    CHECK(tokenize("እሺ, አዎ! ነው?") == Toks{"እሺ", ",", "አዎ", "!", "ነው", "?"});
    CHECK(tokenize("\"ቃል\"") == Toks{"\"", "ቃል", "\""});
    CHECK(tokenize("12:30") == Toks{"12", ":", "30"});
    CHECK(tokenize("a;b") == Toks{"a", ";", "b"});
    // Digits and Latin pass through untouched; hyphen is not a separator.
    CHECK(tokenize("ዓ.ም 2015 e-mail") == Toks{"ዓ", ".", "ም", "2015", "e-mail"});
}

TEST_CASE("tokenize splits on wide Unicode whitespace") {
    CHECK(tokenize(std::string("ሀ\xC2\xA0ለ")) == Toks{"ሀ", "ለ"});          // NBSP
    CHECK(tokenize(std::string("ሀ\xE2\x80\x89ለ")) == Toks{"ሀ", "ለ"});      // thin space
    CHECK(tokenize(std::string("ሀ\xE3\x80\x80ለ")) == Toks{"ሀ", "ለ"});      // ideographic
}

TEST_CASE("tokenize rejects invalid UTF-8") {
    CHECK_THROWS_AS(tokenize("ab\xFFxy"), amsum::EncodingError);
}

TEST_CASE("tokenizer is idempotent over join") {
    const Toks once = tokenize("ሰላም። እንዴት(ነህ)፣ ዛሬ፡ጥሩ ቀን ነው!");
    CHECK(tokenize(amsum::join_tokens(once)) == once);
    CHECK(amsum::join_tokens({"a", "b"}) == "a b");
    CHECK(amsum::join_tokens({}) == "");
}

TEST_CASE("space classification covers the Unicode set") {
    CHECK(amsum::is_unicode_space(U' '));
    CHECK(amsum::is_unicode_space(U'\t'));
    CHECK(amsum::is_unicode_space(char32_t(0x00A0)));
    CHECK(amsum::is_unicode_space(char32_t(0x2028)));
    CHECK_FALSE(amsum::is_unicode_space(U'a'));
    CHECK_FALSE(amsum::is_unicode_space(char32_t(0x1361)));  // wordspace is punctuation
}

TEST_SUITE_END();
