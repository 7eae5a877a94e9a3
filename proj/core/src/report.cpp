#include "corona/report.hpp"

#include <fstream>
#include <sstream>

#include "corona/errors.hpp"
#include "corona/sha256.hpp"
#include "corona/version.hpp"

namespace corona {

std::string canonical_json_text(const Json& j) { return j.dump(2) + "\n"; }

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InvalidInput("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw InvalidInput("cannot write file: " + path);
  out << text;
  if (!out) throw InvalidInput("write failed: " + path);
}

Json without_timings(Json j) {
  if (j.is_object()) j.erase("timings");
  return j;
}

Json report_envelope(const std::string& command, const Json& config,
                     const std::string& input_text) {
  Json j;
  j["tool"] = "corona-lab";
  j["version"] = kVersion;
  j["command"] = command;
  j["config"] = config;
  j["input_sha256"] = sha256_hex(input_text);
  return j;
}

}  // namespace corona
