#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "sellab/selection.hpp"
#include "sellab/sets.hpp"

namespace sellab {

using Json = nlohmann::ordered_json;

/// Parses text, turning syntax errors into InputError("source:line:col: ...").
Json parse_json_text(const std::string& text, const std::string& source);
Json read_json_file(const std::string& path);

/// {"kind": "euclidean" | "lp" | "l1" | "hyperbolic2", "dim": d, "p": p}
GeodesicSpace space_from_json(const Json& j);
Json space_to_json(const GeodesicSpace& space);
/// Compact form used on the command line: euclidean:2, lp:2:4, l1:3, hyperbolic2.
GeodesicSpace parse_space_arg(const std::string& s);
std::string space_arg(const GeodesicSpace& space);

struct LoadedNet {
  GeodesicSpace space = GeodesicSpace::euclidean(1);
  Net points;
  std::optional<std::vector<double>> masses;
};

/// Net JSON: {"space": {...}, "points": [[...], ...], "masses": [...]?,
/// "model": "disk"?}. Disk coordinates are converted to the hyperboloid.
LoadedNet net_from_json(const Json& j);
LoadedNet load_net_file(const std::string& path);
Json net_to_json(const GeodesicSpace& space, const Net& net);

Json point_to_json(const Point& p);

/// {"max_n", "hull_tol", "mp_tol", "cheb_tol", "collapse_gap",
///  "holder_constants": {"3": h3, ...}}; absent keys keep defaults.
SelectionConfig selection_config_from_json(const Json& j);

/// Shortest round-trip decimal form of a double (std::to_chars).
std::string format_double(double v);

}  // namespace sellab
