#pragma once

#include <string>
#include <vector>

#include "json.hpp"
#include "pathform/error.hpp"
#include "pathform/path.hpp"

namespace pathform {

// One path per line: {"T": real, "d": int, "jumps": [[time, [mark...]], ...]}.
inline nlohmann::json path_to_json(const JumpPath& path) {
  nlohmann::json jumps = nlohmann::json::array();
  for (const auto& j : path.jumps()) {
    const auto c = j.mark.coords();
    jumps.push_back({j.time, std::vector<double>(c.begin(), c.end())});
  }
  return {{"T", path.horizon()}, {"d", path.dimension()}, {"jumps", std::move(jumps)}};
}

inline std::string path_to_json_line(const JumpPath& path) { return path_to_json(path).dump(); }

inline JumpPath path_from_json(const nlohmann::json& j) {
  try {
    const double horizon = j.at("T").get<double>();
    const auto dim = j.at("d").get<std::size_t>();
    std::vector<Jump> jumps;
    for (const auto& entry : j.at("jumps")) {
      const auto coords = entry.at(1).get<std::vector<double>>();
      if (coords.size() != dim) fail(Errc::DimensionMismatch, "mark length differs from d");
      jumps.push_back({entry.at(0).get<double>(), Point(std::span<const double>(coords))});
    }
    return JumpPath(horizon, dim, std::move(jumps));
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::InvalidArgument, std::string("malformed path JSON: ") + e.what());
  }
}

inline JumpPath path_from_json_line(const std::string& line) {
  try {
    return path_from_json(nlohmann::json::parse(line));
  } catch (const nlohmann::json::parse_error& e) {
    fail(Errc::InvalidArgument, std::string("malformed path JSON: ") + e.what());
  }
}

}  // namespace pathform
