#include "report.hpp"

#include <cmath>

#include "io.hpp"
#include "lgg/version.hpp"

namespace lgg::cli {

namespace {

void dump_into(const nlohmann::json& value, std::string& out) {
  switch (value.type()) {
    case nlohmann::json::value_t::object: {
      out += '{';
      bool first = true;
      // nlohmann::json objects are std::map backed, iteration is key-sorted
      for (const auto& [key, item] : value.items()) {
        if (!first) out += ',';
        first = false;
        out += nlohmann::json(key).dump();
        out += ':';
        dump_into(item, out);
      }
      out += '}';
      break;
    }
    case nlohmann::json::value_t::array: {
      out += '[';
      for (std::size_t i = 0; i < value.size(); ++i) {
        if (i) out += ',';
        dump_into(value[i], out);
      }
      out += ']';
      break;
    }
    case nlohmann::json::value_t::number_float: {
      const double v = value.get<double>();
      out += std::isfinite(v) ? io::format_double(v) : "null";
      break;
    }
    default:
      out += value.dump();
  }
}

}  // namespace

nlohmann::json RunReport::to_json() const {
  nlohmann::json j = nlohmann::json::object();
  j["command"] = command;
  j["parameters"] = parameters;
  j["metrics"] = metrics;
  j["warnings"] = warnings;
  j["version"] = kVersion;
  return j;
}

std::string dump_json(const nlohmann::json& value) {
  std::string out;
  dump_into(value, out);
  return out;
}

std::string serialize(const RunReport& report) { return dump_json(report.to_json()); }

}  // namespace lgg::cli
