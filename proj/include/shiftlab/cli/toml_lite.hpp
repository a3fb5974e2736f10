#pragma once

// Reader for the TOML subset used by experiment configs: [section] headers,
// key = value pairs, strings, numbers, booleans, flat arrays, # comments.

#include <filesystem>
#include <map>
#include <string>
#include <vector>

namespace shiftlab::toml {

struct Value {
  enum class Kind { String, Number, Bool, Array };
  Kind kind = Kind::String;
  std::string text;  // string contents, or the literal number text
  double number = 0.0;
  bool boolean = false;
  std::vector<Value> items;
};

/// section -> key -> value. Top-level keys live under "".
using Document = std::map<std::string, std::map<std::string, Value>>;

/// Throws ContractError with "line N: ..." on malformed input.
Document parse(std::string_view text);
Document parse_file(const std::filesystem::path& path);

}  // namespace shiftlab::toml
