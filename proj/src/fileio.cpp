#include "fileio.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "ftdecomp/error.hpp"

namespace ftdecomp {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownFeature: return "unknown-feature";
    case ErrorCode::StaleWeight: return "stale-weight";
    case ErrorCode::Parse: return "parse";
    case ErrorCode::Validation: return "validation";
    case ErrorCode::Duplicate: return "duplicate";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::InvalidState: return "invalid-state";
    case ErrorCode::Unauthorized: return "unauthorized";
    case ErrorCode::Mismatch: return "mismatch";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

namespace detail {

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string(), path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file_atomic(const std::filesystem::path& path, const std::string& content) {
  auto tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string(), path.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "short write to " + tmp.string(), path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw Error(ErrorCode::Io, "cannot replace " + path.string(), path.string());
  }
}

nlohmann::json parse_json(const std::string& text, const std::string& origin) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::Parse, origin + ": " + e.what(), origin);
  }
}

const nlohmann::json& require(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw Error(ErrorCode::Parse, where + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) throw Error(ErrorCode::Parse, where + ": missing field \"" + key + "\"", key);
  return *it;
}

std::string require_string(const nlohmann::json& obj, const char* key, const std::string& where) {
  const auto& v = require(obj, key, where);
  if (!v.is_string()) throw Error(ErrorCode::Parse, where + ": field \"" + key + "\" must be a string", key);
  return v.get<std::string>();
}

}  // namespace detail
}  // namespace ftdecomp
