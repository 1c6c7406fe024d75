#pragma once

#include <string>
#include <string_view>

namespace supercap::utf8 {

inline constexpr char32_t kReplacementChar = U'\uFFFD';

/// Decodes UTF-8. Malformed or overlong sequences become one U+FFFD per
/// offending byte; decoding never fails.
std::u32string decode(std::string_view text);

std::string encode(char32_t cp);
std::string encode(std::u32string_view text);

/// Unicode White_Space property.
bool is_space(char32_t cp) noexcept;

}  // namespace supercap::utf8
