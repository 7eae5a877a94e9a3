#pragma once

#include <string>
#include <string_view>

namespace corona {

/// SHA-256 digest of the bytes in `data`, as a lowercase hex string.
/// Used to stamp reports with a content hash so byte-identical runs are
/// recognizable at a glance.
std::string sha256_hex(std::string_view data);

}  // namespace corona
