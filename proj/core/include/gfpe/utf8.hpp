#pragma once

#include <string>
#include <string_view>

namespace gfpe::utf8 {

// Strict decoding: rejects overlong forms, surrogates and code points past U+10FFFF.
// Throws Error(InvalidEncoding).
std::u32string decode(std::string_view text);

std::string encode(std::u32string_view text);
std::string encode(char32_t c);

bool is_scalar_value(char32_t c) noexcept;

}  // namespace gfpe::utf8
