// report.hpp
//
// Report envelope shared by the CLI and the checkpointed searches: a resolved
// config echo with a content hash, a schema version and the payload.

#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <string_view>

namespace sumfree {

inline constexpr int kSchemaVersion = 1;
inline constexpr std::string_view kVersion = "1.0.0";

// FNV-1a 64, rendered as 16 hex digits.
std::string content_hash(std::string_view bytes);

struct RunConfig {
  std::string command;
  nlohmann::json params = nlohmann::json::object();
  std::int64_t shards = 1;
  std::string checkpoint;
  std::string format = "json";
  std::uint64_t seed = 1;
  double certificate_tolerance = 1e-10;
  double grid_tolerance = 1e-9;
};

nlohmann::json to_json(const RunConfig& c);
RunConfig run_config_from_json(const nlohmann::json& j);

// {schema_version, version, config, config_hash, results}. Keys are sorted
// by nlohmann's default object, so output is canonical.
nlohmann::json make_report(const RunConfig& c, nlohmann::json results);

// Pretty-printed with a trailing newline.
std::string serialize(const nlohmann::json& report);

}  // namespace sumfree
