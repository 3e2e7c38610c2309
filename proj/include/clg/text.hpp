#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

// UTF-8 helpers restricted to what German text needs: ASCII plus the
// Latin-1 supplement. Case folding never changes the byte length, so byte
// offsets computed on a folded string are valid on the original.
namespace clg::text {

struct Decoded {
  char32_t cp = 0;
  std::size_t length = 1;  // bytes consumed; 1 for invalid sequences
};

Decoded decode(std::string_view s, std::size_t pos);

bool is_letter(char32_t cp);
bool is_upper(char32_t cp);
bool is_digit(char32_t cp);
bool is_space(char32_t cp);

std::string fold_case(std::string_view s);

// True if the first code point is an uppercase letter.
bool starts_upper(std::string_view s);
// True if every letter is uppercase and there are at least two of them.
bool is_all_upper(std::string_view s);
bool is_alphabetic(std::string_view s);

std::size_t count_code_points(std::string_view s);

std::string_view trim(std::string_view s);
std::vector<std::string_view> split(std::string_view s, char sep);
// Splits on runs of spaces and tabs.
std::vector<std::string_view> split_fields(std::string_view s);

bool ends_with(std::string_view s, std::string_view suffix);

}  // namespace clg::text
