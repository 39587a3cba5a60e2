#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace lgg::cli {

/// Machine-readable summary printed by every command.
struct RunReport {
  std::string command;
  nlohmann::json parameters = nlohmann::json::object();
  nlohmann::json metrics = nlohmann::json::object();
  std::vector<std::string> warnings;

  nlohmann::json to_json() const;
};

/// Compact JSON with sorted object keys and doubles printed with 17
/// significant digits; non-finite doubles become null.
std::string dump_json(const nlohmann::json& value);

std::string serialize(const RunReport& report);

}  // namespace lgg::cli
