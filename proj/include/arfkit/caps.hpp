#pragma once

#include <cctype>
#include <cstdint>
#include <cstdlib>
#include <sstream>
#include <string>

#include "arfkit/error.hpp"

namespace arfkit {

// Enumeration and search limits. Exceeding one raises a resource_cap error, never a silent downgrade.
struct Caps {
  std::uint64_t torus_enumeration = 10000;  // leading-coefficient images enumerated exhaustively
  std::uint64_t bruteforce = 1u << 16;      // elements x of A/conductor enumerated by the direct oracle
  int degree = 24;                          // largest conductor exponent accepted when building
  std::uint64_t lattice_search = 1u << 8;   // |normalization / A| allowed for the intermediate-ring search
  std::uint64_t lattice_nodes = 1u << 20;   // intermediate rings visited by that search
  std::uint64_t chain_paths = 256;          // chains explored in all-choices mode
};

// Parses "key=value,key=value" (keys: torus, bruteforce, degree, lattice, nodes, chains).
inline Caps parse_caps(const std::string& text, Caps base = {}) {
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    require(eq != std::string::npos, ErrorKind::configuration, "malformed cap entry '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string text_value = item.substr(eq + 1);
    std::uint64_t value = 0;
    std::size_t used = 0;
    try {
      if (!text_value.empty() && std::isdigit(static_cast<unsigned char>(text_value[0]))) value = std::stoull(text_value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    require(used != 0 && used == text_value.size(), ErrorKind::configuration,
            "cap value for '" + key + "' is not a non-negative integer");
    if (key == "torus") base.torus_enumeration = value;
    else if (key == "bruteforce") base.bruteforce = value;
    else if (key == "degree") base.degree = static_cast<int>(value);
    else if (key == "lattice") base.lattice_search = value;
    else if (key == "nodes") base.lattice_nodes = value;
    else if (key == "chains") base.chain_paths = value;
    else fail(ErrorKind::configuration, "unknown cap '" + key + "'");
  }
  return base;
}

inline Caps caps_from_environment() {
  const char* env = std::getenv("ARFKIT_CAPS");
  return env ? parse_caps(env) : Caps{};
}

}  // namespace arfkit
