#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "dyneval/errors.hpp"
#include "json.hpp"

namespace dyneval::detail {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

inline constexpr int kSchemaMajor = 1;
inline constexpr int kSchemaMinor = 0;

inline json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Parse, path.string() + ": " + e.what());
  }
}

inline void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::Io, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::Io, "failed writing " + path.string());
}

/// Accepts "1" or "1.x"; rejects other major versions.
inline void check_schema_version(const json& doc, const std::string& what) {
  if (!doc.contains("schema_version")) {
    throw Error(ErrorKind::Schema, what + " lacks schema_version");
  }
  const auto& v = doc.at("schema_version");
  if (!v.is_string()) throw Error(ErrorKind::Schema, what + ": schema_version must be a string");
  const auto text = v.get<std::string>();
  const auto dot = text.find('.');
  const auto major = text.substr(0, dot);
  if (major != std::to_string(kSchemaMajor)) {
    throw Error(ErrorKind::Schema, what + ": unsupported schema version " + text);
  }
}

inline std::string schema_version_string() {
  return std::to_string(kSchemaMajor) + "." + std::to_string(kSchemaMinor);
}

inline const json& require(const json& doc, const char* key, const std::string& what) {
  if (!doc.is_object() || !doc.contains(key)) {
    throw Error(ErrorKind::Schema, what + ": missing '" + key + "'");
  }
  return doc.at(key);
}

template <typename T>
T get_as(const json& doc, const char* key, const std::string& what) {
  if (!doc.contains(key)) throw Error(ErrorKind::Schema, what + ": missing '" + key + "'");
  try {
    return doc.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Schema, what + ": bad '" + key + "': " + e.what());
  }
}

template <typename T>
T get_or(const json& doc, const char* key, T fallback, const std::string& what) {
  if (!doc.contains(key) || doc.at(key).is_null()) return fallback;
  return get_as<T>(doc, key, what);
}

/// Resolves an axis reference given as an index or as a label.
inline std::size_t resolve_index(const json& ref, const std::vector<std::string>& labels,
                                 const std::string& axis) {
  if (ref.is_number_unsigned() || (ref.is_number_integer() && ref.get<long long>() >= 0)) {
    const auto i = ref.get<std::size_t>();
    if (i >= labels.size()) {
      throw Error(ErrorKind::Schema, axis + " index " + std::to_string(i) + " out of range");
    }
    return i;
  }
  if (ref.is_string()) {
    const auto name = ref.get<std::string>();
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i] == name) return i;
    }
    throw Error(ErrorKind::Schema, "unknown " + axis + " '" + name + "'");
  }
  throw Error(ErrorKind::Schema, axis + " must be an index or a label");
}

}  // namespace dyneval::detail
