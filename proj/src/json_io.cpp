#include "idem/json_io.hpp"

#include <fstream>
#include <set>

#include "idem/error.hpp"

namespace idem::io {

namespace {

const Json& field(const Json& j, const char* key, const char* what) {
  if (!j.is_object()) fail(ErrorKind::Input, std::string(what) + " must be a JSON object");
  auto it = j.find(key);
  if (it == j.end())
    fail(ErrorKind::Input, std::string(what) + " is missing \"" + key + "\"");
  return *it;
}

std::string text(const Json& j, const char* what) {
  if (!j.is_string()) fail(ErrorKind::Input, std::string(what) + " must be a string");
  return j.get<std::string>();
}

double number(const Json& j, const char* what) {
  if (!j.is_number()) fail(ErrorKind::Input, std::string(what) + " must be a number");
  return j.get<double>();
}

void require_space(const Json& j, const GroundSpace& space, const char* what) {
  const std::string ref = text(field(j, "space", what), "space reference");
  if (ref != space.id())
    fail(ErrorKind::Input, std::string(what) + " refers to space '" + ref + "', expected '" +
                               space.id() + "'");
}

GroundSpace bare_space(std::string id, const std::vector<std::string>& names) {
  std::vector<Point> points;
  points.reserve(names.size());
  for (const auto& n : names) points.push_back({n, {}});
  return GroundSpace(std::move(id), std::move(points));
}

}  // namespace

Json load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::Input, "cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::Input, "malformed JSON in '" + path + "': " + e.what());
  }
}

Json to_json(MaxPlus v) {
  if (v.is_neg_inf()) return "-inf";
  return v.value();
}

MaxPlus maxplus_from_json(const Json& j) {
  if (j.is_string() && j.get<std::string>() == "-inf") return kNegInf;
  return MaxPlus{number(j, "max-plus value")};
}

GroundSpace space_from_json(const Json& j) {
  std::string id = text(field(j, "id", "space"), "space id");
  const Json& pts = field(j, "points", "space");
  if (!pts.is_array()) fail(ErrorKind::Input, "space points must be an array");
  std::vector<Point> points;
  for (const Json& p : pts) {
    Point point{text(field(p, "id", "point"), "point id"), {}};
    if (auto it = p.find("coords"); it != p.end()) {
      if (!it->is_array()) fail(ErrorKind::Input, "point coords must be an array");
      for (const Json& c : *it) point.coords.push_back(number(c, "coordinate"));
    }
    points.push_back(std::move(point));
  }
  return GroundSpace(std::move(id), std::move(points));
}

Json to_json(const GroundSpace& space) {
  Json pts = Json::array();
  for (const Point& p : space.points()) {
    Json jp = {{"id", p.id}};
    if (!p.coords.empty()) jp["coords"] = p.coords;
    pts.push_back(std::move(jp));
  }
  return {{"id", space.id()}, {"points", std::move(pts)}};
}

FunctionTable function_from_json(const Json& j, const GroundSpace& space) {
  require_space(j, space, "function");
  const Json& values = field(j, "values", "function");
  if (!values.is_object()) fail(ErrorKind::Input, "function values must be an object");
  std::vector<double> table(space.size());
  std::vector<bool> seen(space.size(), false);
  for (const auto& [key, val] : values.items()) {
    const PointIndex x = space.index_of(key);
    table[x] = number(val, "function value");
    seen[x] = true;
  }
  for (PointIndex x = 0; x < seen.size(); ++x)
    if (!seen[x])
      fail(ErrorKind::Input, "function is undefined at '" + space.point(x).id + "'");
  return FunctionTable(space, std::move(table));
}

Json to_json(const FunctionTable& phi, const GroundSpace& space) {
  Json values = Json::object();
  for (PointIndex x = 0; x < phi.size(); ++x) values[space.point(x).id] = phi(x);
  return {{"space", phi.space_id()}, {"values", std::move(values)}};
}

PointMap map_from_json(const Json& j, const GroundSpace& from, const GroundSpace& to) {
  const std::string src = text(field(j, "from", "map"), "map source");
  const std::string dst = text(field(j, "to", "map"), "map target");
  if (src != from.id() || dst != to.id())
    fail(ErrorKind::Input, "map goes '" + src + "' -> '" + dst + "', expected '" + from.id() +
                               "' -> '" + to.id() + "'");
  const Json& assign = field(j, "assign", "map");
  if (!assign.is_object()) fail(ErrorKind::Input, "map assign must be an object");
  std::vector<PointIndex> table(from.size());
  std::vector<bool> seen(from.size(), false);
  for (const auto& [key, val] : assign.items()) {
    const PointIndex x = from.index_of(key);
    table[x] = to.index_of(text(val, "map value"));
    seen[x] = true;
  }
  for (PointIndex x = 0; x < seen.size(); ++x)
    if (!seen[x]) fail(ErrorKind::Input, "map is undefined at '" + from.point(x).id + "'");
  return PointMap(from, to, std::move(table));
}

Json to_json(const PointMap& f, const GroundSpace& from, const GroundSpace& to) {
  Json assign = Json::object();
  for (PointIndex x = 0; x < f.source_size(); ++x) assign[from.point(x).id] = to.point(f(x)).id;
  return {{"from", f.from_space()}, {"to", f.to_space()}, {"assign", std::move(assign)}};
}

IdempotentMeasure measure_from_json(const Json& j, const GroundSpace& space, Normalize normalize) {
  require_space(j, space, "measure");
  const Json& atoms = field(j, "atoms", "measure");
  if (!atoms.is_array()) fail(ErrorKind::Input, "measure atoms must be an array");
  std::vector<RawAtom> raw;
  for (const Json& a : atoms)
    raw.push_back({space.index_of(text(field(a, "point", "atom"), "atom point")),
                   maxplus_from_json(field(a, "weight", "atom"))});
  return make_measure(space, std::move(raw), normalize);
}

Json to_json(const IdempotentMeasure& mu, const GroundSpace& space) {
  Json atoms = Json::array();
  for (const Atom& a : mu.atoms())
    atoms.push_back({{"point", space.point(a.point).id}, {"weight", a.weight}});
  return {{"space", mu.space_id()}, {"atoms", std::move(atoms)}};
}

WeakNeighborhood neighborhood_from_json(const Json& j, const GroundSpace& space) {
  return WeakNeighborhood(measure_from_json(field(j, "center", "neighborhood"), space),
                          tests_from_json(field(j, "tests", "neighborhood"), space),
                          number(field(j, "epsilon", "neighborhood"), "epsilon"));
}

std::vector<PointIndex> dense_from_json(const Json& j, const GroundSpace& space) {
  const Json* list = &j;
  if (j.is_object()) {
    require_space(j, space, "dense set");
    list = &field(j, "points", "dense set");
  }
  if (!list->is_array()) fail(ErrorKind::Input, "dense set must list point ids");
  std::vector<PointIndex> out;
  for (const Json& p : *list) out.push_back(space.index_of(text(p, "dense point")));
  if (out.empty()) fail(ErrorKind::Input, "dense set is empty");
  return out;
}

std::vector<FunctionTable> tests_from_json(const Json& j, const GroundSpace& space) {
  const Json* list = &j;
  if (j.is_object()) list = &field(j, "tests", "test list");
  if (!list->is_array()) fail(ErrorKind::Input, "tests must be an array of functions");
  std::vector<FunctionTable> out;
  for (const Json& phi : *list) out.push_back(function_from_json(phi, space));
  return out;
}

std::string space_ref(const Json& j) {
  return text(field(j, "space", "document"), "space reference");
}

GroundSpace space_from_function_keys(const Json& function) {
  const Json& values = field(function, "values", "function");
  if (!values.is_object()) fail(ErrorKind::Input, "function values must be an object");
  std::vector<std::string> names;
  for (const auto& [key, val] : values.items()) names.push_back(key);
  return bare_space(space_ref(function), names);
}

GroundSpace space_from_map_source(const Json& map) {
  const Json& assign = field(map, "assign", "map");
  if (!assign.is_object()) fail(ErrorKind::Input, "map assign must be an object");
  std::vector<std::string> names;
  for (const auto& [key, val] : assign.items()) names.push_back(key);
  return bare_space(text(field(map, "from", "map"), "map source"), names);
}

GroundSpace space_from_map_target(const Json& map) {
  const Json& assign = field(map, "assign", "map");
  if (!assign.is_object()) fail(ErrorKind::Input, "map assign must be an object");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const auto& [key, val] : assign.items()) {
    std::string name = text(val, "map value");
    if (seen.insert(name).second) names.push_back(std::move(name));
  }
  return bare_space(text(field(map, "to", "map"), "map target"), names);
}

GroundSpace space_from_measure_atoms(const std::vector<const Json*>& measures) {
  if (measures.empty()) fail(ErrorKind::Input, "no measure to infer a space from");
  std::vector<std::string> names;
  std::set<std::string> seen;
  for (const Json* m : measures) {
    const Json& atoms = field(*m, "atoms", "measure");
    if (!atoms.is_array()) fail(ErrorKind::Input, "measure atoms must be an array");
    for (const Json& a : atoms) {
      std::string name = text(field(a, "point", "atom"), "atom point");
      if (seen.insert(name).second) names.push_back(std::move(name));
    }
  }
  return bare_space(space_ref(*measures.front()), names);
}

}  // namespace idem::io
