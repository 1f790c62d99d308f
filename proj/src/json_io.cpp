#include "sellab/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace sellab {

namespace {

std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1, col = 1;
  for (std::size_t i = 0; i < text.size() && i + 1 < byte; ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return std::to_string(line) + ":" + std::to_string(col);
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) throw InputError(std::string(what) + " must be a number");
  return j.get<double>();
}

std::size_t count(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0)
    throw InputError(std::string(what) + " must be a nonnegative integer");
  return j.get<std::size_t>();
}

}  // namespace

Json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    std::string msg = e.what();
    const auto pos = msg.find("syntax error");
    if (pos != std::string::npos) msg = msg.substr(pos);
    throw InputError(source + ":" + locate(text, e.byte) + ": " + msg);
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json_text(ss.str(), path);
}

GeodesicSpace space_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw InputError("space must be an object with a string \"kind\"");
  const std::string kind = j["kind"].get<std::string>();
  if (kind == "hyperbolic2") return GeodesicSpace::hyperbolic2();
  if (!j.contains("dim")) throw InputError("space \"" + kind + "\" needs \"dim\"");
  const std::size_t dim = count(j["dim"], "space.dim");
  if (kind == "euclidean") return GeodesicSpace::euclidean(dim);
  if (kind == "l1") return GeodesicSpace::l1(dim);
  if (kind == "lp") {
    if (!j.contains("p")) throw InputError("space \"lp\" needs \"p\"");
    const double p = number(j["p"], "space.p");
    if (p == 1.0) return GeodesicSpace::l1(dim);
    return GeodesicSpace::lp(dim, p);
  }
  throw InputError("unknown space kind \"" + kind + "\"");
}

Json space_to_json(const GeodesicSpace& space) {
  Json j;
  switch (space.kind()) {
    case SpaceKind::euclidean: j["kind"] = "euclidean"; break;
    case SpaceKind::lp: j["kind"] = "lp"; break;
    case SpaceKind::l1: j["kind"] = "l1"; break;
    case SpaceKind::hyperbolic2: j["kind"] = "hyperbolic2"; return j;
  }
  j["dim"] = space.dim();
  if (space.kind() == SpaceKind::lp) j["p"] = space.p();
  return j;
}

GeodesicSpace parse_space_arg(const std::string& s) {
  std::vector<std::string> parts;
  std::stringstream ss(s);
  for (std::string part; std::getline(ss, part, ':');) parts.push_back(part);
  auto num = [&](std::size_t i) {
    if (i >= parts.size()) throw InputError("space '" + s + "' is missing a parameter");
    try {
      std::size_t used = 0;
      const double v = std::stod(parts[i], &used);
      if (used != parts[i].size()) throw std::invalid_argument("trailing");
      return v;
    } catch (const std::exception&) {
      throw InputError("space '" + s + "': bad number '" + parts[i] + "'");
    }
  };
  if (parts.empty()) throw InputError("empty space descriptor");
  const std::string& k = parts[0];
  if (k == "hyperbolic2" && parts.size() == 1) return GeodesicSpace::hyperbolic2();
  if (k == "euclidean" && parts.size() == 2)
    return GeodesicSpace::euclidean(static_cast<std::size_t>(num(1)));
  if (k == "l1" && parts.size() == 2) return GeodesicSpace::l1(static_cast<std::size_t>(num(1)));
  if (k == "lp" && parts.size() == 3) {
    const double p = num(2);
    if (p == 1.0) return GeodesicSpace::l1(static_cast<std::size_t>(num(1)));
    return GeodesicSpace::lp(static_cast<std::size_t>(num(1)), p);
  }
  throw InputError("space '" + s +
                   "' not understood; use euclidean:D, lp:D:P, l1:D or hyperbolic2");
}

std::string space_arg(const GeodesicSpace& space) {
  switch (space.kind()) {
    case SpaceKind::euclidean: return "euclidean:" + std::to_string(space.dim());
    case SpaceKind::lp: return "lp:" + std::to_string(space.dim()) + ":" + format_double(space.p());
    case SpaceKind::l1: return "l1:" + std::to_string(space.dim());
    case SpaceKind::hyperbolic2: return "hyperbolic2";
  }
  return "";
}

LoadedNet net_from_json(const Json& j) {
  if (!j.is_object()) throw InputError("net file must hold a JSON object");
  if (!j.contains("space")) throw InputError("net file is missing \"space\"");
  if (!j.contains("points") || !j["points"].is_array())
    throw InputError("net file needs a \"points\" array");
  LoadedNet out;
  out.space = space_from_json(j["space"]);
  bool disk = false;
  if (j.contains("model")) {
    if (!j["model"].is_string()) throw InputError("\"model\" must be a string");
    const std::string model = j["model"].get<std::string>();
    if (model == "disk") {
      if (out.space.kind() != SpaceKind::hyperbolic2)
        throw InputError("\"model\": \"disk\" applies only to hyperbolic2");
      disk = true;
    } else if (model != "hyperboloid") {
      throw InputError("unknown model \"" + model + "\"");
    }
  }
  std::size_t idx = 0;
  for (const Json& pj : j["points"]) {
    const std::string where = "points[" + std::to_string(idx++) + "]";
    if (!pj.is_array()) throw InputError(where + " must be an array of numbers");
    std::vector<double> c;
    for (const Json& v : pj) c.push_back(number(v, where.c_str()));
    if (c.size() > kMaxCoords) throw InputError(where + " has too many coordinates");
    Point p{std::span<const double>(c)};
    if (disk) p = GeodesicSpace::disk_to_hyperboloid(p);
    try {
      out.space.validate(p);
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
    out.points.push_back(p);
  }
  if (j.contains("masses")) {
    if (!j["masses"].is_array()) throw InputError("\"masses\" must be an array");
    std::vector<double> m;
    for (const Json& v : j["masses"]) m.push_back(number(v, "masses entry"));
    out.masses = std::move(m);
  }
  return out;
}

LoadedNet load_net_file(const std::string& path) {
  const Json j = read_json_file(path);
  try {
    return net_from_json(j);
  } catch (const InputError& e) {
    throw InputError(path + ": " + e.what());
  }
}

Json point_to_json(const Point& p) {
  Json a = Json::array();
  for (double v : p) a.push_back(v);
  return a;
}

Json net_to_json(const GeodesicSpace& space, const Net& net) {
  Json j;
  j["space"] = space_to_json(space);
  Json pts = Json::array();
  for (const Point& p : net) pts.push_back(point_to_json(p));
  j["points"] = pts;
  return j;
}

SelectionConfig selection_config_from_json(const Json& j) {
  SelectionConfig cfg;
  if (!j.is_object()) throw InputError("selection config must be an object");
  if (j.contains("max_n")) cfg.max_n = count(j["max_n"], "max_n");
  if (j.contains("hull_tol")) cfg.hull_tol = number(j["hull_tol"], "hull_tol");
  if (j.contains("mp_tol")) cfg.mp_tol = number(j["mp_tol"], "mp_tol");
  if (j.contains("cheb_tol")) cfg.cheb_tol = number(j["cheb_tol"], "cheb_tol");
  if (j.contains("collapse_gap")) cfg.collapse_gap = number(j["collapse_gap"], "collapse_gap");
  if (j.contains("holder_constants")) {
    const Json& h = j["holder_constants"];
    if (!h.is_object()) throw InputError("holder_constants must map net sizes to numbers");
    for (const auto& [k, v] : h.items()) {
      std::size_t n = 0;
      const auto r = std::from_chars(k.data(), k.data() + k.size(), n);
      if (r.ec != std::errc() || r.ptr != k.data() + k.size())
        throw InputError("holder_constants key '" + k + "' is not an integer");
      cfg.holder_constants[n] = number(v, "holder constant");
    }
  }
  cfg.validate();
  return cfg;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, r.ptr);
}

}  // namespace sellab
