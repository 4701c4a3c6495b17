#pragma once

#include <string>

#include <json.hpp>

namespace rcs {

using Json = nlohmann::ordered_json;

// Wraps a payload with version and the configuration that produced it so
// every report replays from its own contents. Field order is stable.
Json make_report(const std::string& command, const Json& config, const Json& payload);

void write_text_file(const std::string& path, const std::string& content);
void write_report_file(const std::string& path, const Json& report);

} // namespace rcs
