#pragma once

#include <string>
#include <string_view>

namespace vfk::service {

std::string base64_encode(std::string_view bytes);
std::string base64_decode(std::string_view text);  // throws InvalidArgument

// Lower-case hex SHA-256 digest.
std::string sha256_hex(std::string_view bytes);

}  // namespace vfk::service
