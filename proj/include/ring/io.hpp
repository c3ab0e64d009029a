#pragma once

// JSON/CSV serialization of result records plus the run manifest. All floating
// point goes through shortest-round-trip formatting so files reload exactly.

#include "ring/landscape.hpp"
#include "ring/sde.hpp"

#include <json.hpp>

#include <string>

namespace ring::io {

inline constexpr const char* kToolVersion = "ringland 1.0.0";

std::string format_double(double v);   // shortest decimal that round-trips

nlohmann::json to_json(const StationaryPointSet& s);
nlohmann::json to_json(const TransitionGraph& g);
nlohmann::json to_json(const BifurcationDiagram& d);
nlohmann::json to_json(const TransitionStats& t);
nlohmann::json to_json(const PassageStats& p);

StationaryPointSet point_set_from_json(const nlohmann::json& j);
BifurcationDiagram diagram_from_json(const nlohmann::json& j);

std::string to_csv(const StationaryPointSet& s);
std::string to_csv(const BifurcationDiagram& d);
std::string hit_times_csv(const TransitionStats& t);

// manifest echoing the fully-resolved configuration
nlohmann::json manifest(const std::string& command, const nlohmann::json& config);

void write_file(const std::string& path, const std::string& content);

} // namespace ring::io
