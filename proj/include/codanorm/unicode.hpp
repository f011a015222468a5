#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace codanorm {

// UTF-8 <-> code point helpers. Invalid byte sequences decode to U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

// Unicode NFC normalization (ICU-backed).
std::string nfc(const std::string& s);

// True for Unicode general category P. Arabic punctuation (U+061F, U+060C,
// U+061B) falls under Po and is covered.
bool is_punct(char32_t c);

bool is_space(char32_t c);

}  // namespace codanorm
