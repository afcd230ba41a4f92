#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace mvgcn::numkit {

/// FNV-1a over bytes; used for config hashes and the artifact manifest.
std::uint64_t fnv1a64(std::string_view bytes);
std::string fnv1a64_hex(std::string_view bytes);

}  // namespace mvgcn::numkit
