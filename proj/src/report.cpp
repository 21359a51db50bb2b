#include "sumfree/report.hpp"

#include <cstdio>

namespace sumfree {

std::string content_hash(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

nlohmann::json to_json(const RunConfig& c) {
  return {{"command", c.command},
          {"params", c.params},
          {"shards", c.shards},
          {"checkpoint", c.checkpoint},
          {"format", c.format},
          {"seed", c.seed},
          {"tolerances", {{"certificate", c.certificate_tolerance}, {"grid", c.grid_tolerance}}}};
}

RunConfig run_config_from_json(const nlohmann::json& j) {
  RunConfig c;
  c.command = j.at("command").get<std::string>();
  c.params = j.at("params");
  c.shards = j.at("shards").get<std::int64_t>();
  c.checkpoint = j.at("checkpoint").get<std::string>();
  c.format = j.at("format").get<std::string>();
  c.seed = j.at("seed").get<std::uint64_t>();
  c.certificate_tolerance = j.at("tolerances").at("certificate").get<double>();
  c.grid_tolerance = j.at("tolerances").at("grid").get<double>();
  return c;
}

nlohmann::json make_report(const RunConfig& c, nlohmann::json results) {
  nlohmann::json config = to_json(c);
  return {{"schema_version", kSchemaVersion},
          {"version", std::string(kVersion)},
          {"config", config},
          {"config_hash", content_hash(config.dump())},
          {"results", std::move(results)}};
}

std::string serialize(const nlohmann::json& report) { return report.dump(2) + "\n"; }

}  // namespace sumfree
