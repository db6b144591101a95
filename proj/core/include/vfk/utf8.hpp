#pragma once

#include <string>
#include <string_view>

namespace vfk::utf8 {

// Throws vfk::InvalidArgument on malformed input.
std::u32string decode(std::string_view bytes);

std::string encode(std::u32string_view text);
std::string encode(char32_t symbol);

}  // namespace vfk::utf8
