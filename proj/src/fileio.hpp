#pragma once

#include <filesystem>
#include <string>

#include "json.hpp"

namespace ftdecomp::detail {

std::string read_file(const std::filesystem::path& path);

/// Writes to a sibling temp file and renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Parses JSON text; throws Error(Parse) with line/column context.
nlohmann::json parse_json(const std::string& text, const std::string& origin);

/// Checked field access for hand-written decoders. Throws Error(Parse).
const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& where);
std::string require_string(const nlohmann::json& obj, const char* key, const std::string& where);

}  // namespace ftdecomp::detail
