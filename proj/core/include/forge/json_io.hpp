#pragma once

#include <string>

#include <json.hpp>

#include "forge/groupoid.hpp"

namespace forge {

using json = nlohmann::json;

// Groupoid wire format:
//   {"objects":[0,1], "arrows":[{"id":2,"src":0,"tgt":1},...],
//    "compose":[[g,f,gf],...], "id":{"0":0,...}, "inv":{"2":3,...}}
// Keys of "id"/"inv" are decimal strings (JSON object keys).  Dangling or
// duplicate ids raise MalformedInput.
json groupoid_to_json(const Gpd& g);
Gpd groupoid_from_json(const json& j);

// Functor wire format: {"obj":{"0":0,...}, "arr":{"0":0,...}} with tables
// keyed by the domain's external ids.  A file may embed its own endpoints as
// "dom"/"cod" groupoid documents; otherwise they must be supplied.
json map_to_json(const GroupoidMap& m);
GroupoidMap map_from_json(const json& j, Gpd dom, Gpd cod);

// Loads a functor document, taking endpoints from the document itself unless
// overridden.  Throws MalformedInput when an endpoint is available nowhere.
GroupoidMap map_from_json_auto(const json& j, Gpd dom_override = nullptr,
                               Gpd cod_override = nullptr);

json load_json_file(const std::string& path);  // MalformedInput on parse error

}  // namespace forge
