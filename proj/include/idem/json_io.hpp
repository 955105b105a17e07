#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "idem/ground.hpp"
#include "idem/maxplus.hpp"
#include "idem/measure.hpp"
#include "idem/weaktop.hpp"

namespace idem::io {

// Object keys keep file order: it fixes point order, and with it every
// smallest-index tie-break, for spaces inferred from documents.
using Json = nlohmann::ordered_json;

Json load_file(const std::string& path);

// Finite values as numbers, bottom as "-inf".
Json to_json(MaxPlus v);
MaxPlus maxplus_from_json(const Json& j);

// {"id": "X", "points": [{"id": "a", "coords": [0.5, 0.5]}, ...]}
GroundSpace space_from_json(const Json& j);
Json to_json(const GroundSpace& space);

// {"space": "X", "values": {"a": 2.0, ...}}
FunctionTable function_from_json(const Json& j, const GroundSpace& space);
Json to_json(const FunctionTable& phi, const GroundSpace& space);

// {"from": "X", "to": "Y", "assign": {"a": "u", ...}}
PointMap map_from_json(const Json& j, const GroundSpace& from, const GroundSpace& to);
Json to_json(const PointMap& f, const GroundSpace& from, const GroundSpace& to);

// {"space": "X", "atoms": [{"point": "a", "weight": 0.0}, ...]}
IdempotentMeasure measure_from_json(const Json& j, const GroundSpace& space,
                                    Normalize normalize = Normalize::No);
Json to_json(const IdempotentMeasure& mu, const GroundSpace& space);

// {"center": <measure>, "tests": [<function>, ...], "epsilon": 0.1}
WeakNeighborhood neighborhood_from_json(const Json& j, const GroundSpace& space);

// {"space": "X", "points": ["a", "b", ...]} or a bare array of point ids.
std::vector<PointIndex> dense_from_json(const Json& j, const GroundSpace& space);

// [<function>, ...] or {"tests": [<function>, ...]}.
std::vector<FunctionTable> tests_from_json(const Json& j, const GroundSpace& space);

// The "space" field of a function or measure document.
std::string space_ref(const Json& j);

// Coordinate-free spaces reconstructed from documents that name their points.
GroundSpace space_from_function_keys(const Json& function);
GroundSpace space_from_map_source(const Json& map);
GroundSpace space_from_map_target(const Json& map);
GroundSpace space_from_measure_atoms(const std::vector<const Json*>& measures);

}  // namespace idem::io
