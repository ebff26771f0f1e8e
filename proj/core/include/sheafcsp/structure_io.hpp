#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "sheafcsp/structure.hpp"

namespace sheafcsp {

/// Parses the structure JSON format
///   {"signature":[{"name":"E","arity":2}],"size":4,
///    "relations":{"E":[[0,1],[1,0]]}}
/// Throws InputError on syntax errors or violations; messages carry the line
/// of the offending tuple.
Structure parse_structure_json(std::string_view text);
Structure read_structure_file(const std::filesystem::path& path);

/// Compact, deterministic serialization (one tuple per line).
std::string to_structure_json(const Structure& s);
void write_structure_file(const std::filesystem::path& path, const Structure& s);

}  // namespace sheafcsp
