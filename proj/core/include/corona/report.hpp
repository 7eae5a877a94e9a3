#pragma once

#include <json.hpp>

#include <string>

namespace corona {

/// Order-preserving JSON document used for every artifact the tools write.
using Json = nlohmann::ordered_json;

/// The one serialization used everywhere: 2-space indent, trailing
/// newline. Equal documents produce byte-identical text.
std::string canonical_json_text(const Json& j);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// Copy of the document with the top-level "timings" member removed.
/// Reports are reproducible byte-for-byte except for wall-clock data,
/// which lives only under that key; comparisons strip it first.
Json without_timings(Json j);

/// Standard report preamble: tool name/version, the command, the echoed
/// configuration, and the SHA-256 of the input problem text.
Json report_envelope(const std::string& command, const Json& config,
                     const std::string& input_text);

}  // namespace corona
