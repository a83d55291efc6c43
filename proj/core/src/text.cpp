#include "amsum/text.hpp"

#include <sstream>

#include "amsum/errors.hpp"

namespace amsum {

namespace {

[[noreturn]] void bad_utf8(std::size_t offset, const char* what) {
    std::ostringstream os;
    os << "invalid UTF-8 at byte offset " << offset << ": " << what;
    throw EncodingError(os.str());
}

constexpr char32_t kEthiopicWordspace = 0x1361;  // dropped separator

bool is_ethiopic_punct(char32_t cp) {
    // U+1362 full stop .. U+1367 question mark
    return cp >= 0x1362 && cp <= 0x1367;
}

bool is_ascii_punct(char32_t cp) {
    switch (cp) {
        case '.': case ',': case ';': case ':':
        case '!': case '?': case '"': case '(': case ')':
            return true;
        default:
            return false;
    }
}

}  // namespace

char32_t decode_utf8(std::string_view text, std::size_t& pos) {
    const std::size_t start = pos;
    const auto byte = [&](std::size_t i) { return static_cast<std::uint8_t>(text[i]); };
    const std::uint8_t b0 = byte(pos++);
    if (b0 < 0x80) return b0;
    int extra;
    char32_t cp;
    if ((b0 & 0xE0) == 0xC0) {
        extra = 1;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        extra = 2;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        extra = 3;
        cp = b0 & 0x07;
    } else {
        bad_utf8(start, "invalid leading byte");
    }
    if (pos + extra > text.size()) bad_utf8(start, "truncated sequence");
    for (int i = 0; i < extra; ++i) {
        const std::uint8_t b = byte(pos);
        if ((b & 0xC0) != 0x80) bad_utf8(start, "invalid continuation byte");
        cp = (cp << 6) | (b & 0x3F);
        ++pos;
    }
    static constexpr char32_t kMinForLen[4] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMinForLen[extra]) bad_utf8(start, "overlong encoding");
    if (cp >= 0xD800 && cp <= 0xDFFF) bad_utf8(start, "surrogate code point");
    if (cp > 0x10FFFF) bad_utf8(start, "code point above U+10FFFF");
    return cp;
}

void validate_utf8(std::string_view text) {
    std::size_t pos = 0;
    while (pos < text.size()) decode_utf8(text, pos);
}

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D:
        case 0x20: case 0x85: case 0xA0: case 0x1680:
        case 0x2028: case 0x2029: case 0x202F: case 0x205F: case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> tokens;
    std::string current;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t start = pos;
        const char32_t cp = decode_utf8(text, pos);
        if (is_unicode_space(cp) || cp == kEthiopicWordspace) {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
        } else if (is_ethiopic_punct(cp) || is_ascii_punct(cp)) {
            if (!current.empty()) {
                tokens.push_back(std::move(current));
                current.clear();
            }
            tokens.emplace_back(text.substr(start, pos - start));
        } else {
            current.append(text.substr(start, pos - start));
        }
    }
    if (!current.empty()) tokens.push_back(std::move(current));
    return tokens;
}

std::string join_tokens(const std::vector<std::string>& tokens) {
    std::string out;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (i) out += ' ';
        out += tokens[i];
    }
    return out;
}

}  // namespace amsum
