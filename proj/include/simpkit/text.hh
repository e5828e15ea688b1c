#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace simpkit {

/// Collapses every run of ASCII whitespace to a single space and trims both
/// ends. This is the one whitespace normalization used across the library:
/// before diffing, after extraction, and for metric lengths.
std::string normalize_whitespace(std::string_view text);

/// Splits on runs of ASCII whitespace. Empty and all-blank input yields an
/// empty vector.
std::vector<std::string> split_whitespace(std::string_view text);

std::string join(const std::vector<std::string> &parts, std::string_view sep);

bool is_space(char c);

/// ASCII-only lowercasing; bytes outside ASCII pass through untouched.
std::string ascii_lower(std::string_view text);

/// Decodes UTF-8 into code points. Invalid bytes decode to U+FFFD one byte at
/// a time, so the result length is always well defined.
std::vector<char32_t> utf8_code_points(std::string_view text);

size_t utf8_length(std::string_view text);

}  // namespace simpkit
