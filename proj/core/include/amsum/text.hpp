#ifndef AMSUM_TEXT_HPP
#define AMSUM_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace amsum {

// Decodes one UTF-8 sequence starting at byte `pos`, advancing `pos`.
// Throws EncodingError naming the byte offset on malformed input
// (truncation, overlong forms, surrogates, > U+10FFFF).
char32_t decode_utf8(std::string_view text, std::size_t& pos);

// Validates the whole string; throws EncodingError with the offending
// byte offset.
void validate_utf8(std::string_view text);

bool is_unicode_space(char32_t cp);

/// Splits on Unicode whitespace and the Ethiopic wordspace U+1361, which are
/// dropped, and isolates the Ethiopic punctuation marks U+1362..U+1367 plus
/// ASCII . , ; : ! ? " ( ) as their own tokens. No case folding.
std::vector<std::string> tokenize(std::string_view text);

std::string join_tokens(const std::vector<std::string>& tokens);

}  // namespace amsum

#endif  // AMSUM_TEXT_HPP
