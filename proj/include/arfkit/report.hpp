#pragma once

#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include "arfkit/json_io.hpp"

namespace arfkit {

inline constexpr const char* engine_version = "1.0.0";

inline std::string fnv1a64(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// Report skeleton: keys are sorted by the json object type, so output is byte-stable.
inline json make_report(const std::vector<std::string>& command, const json& inputs, const json& result) {
  return {{"command", command}, {"engine_version", engine_version}, {"input_hash", fnv1a64(inputs.dump())},
          {"inputs", inputs}, {"result", result}};
}

namespace detail {

inline void flatten(const json& j, const std::string& path, std::string& out) {
  if (j.is_object() && !j.empty()) {
    for (auto it = j.begin(); it != j.end(); ++it) flatten(it.value(), path.empty() ? it.key() : path + "." + it.key(), out);
    return;
  }
  if (j.is_array() && !j.empty() && (j[0].is_object() || (j[0].is_array() && !j[0].empty() && j[0][0].is_array()))) {
    for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], path + "[" + std::to_string(i) + "]", out);
    return;
  }
  out += path + ": " + j.dump() + "\n";
}

}  // namespace detail

// Plain-text rendering: one "path: value" line per leaf, in key order.
inline std::string render_text(const json& report) {
  std::string out;
  detail::flatten(report, "", out);
  return out;
}

}  // namespace arfkit
