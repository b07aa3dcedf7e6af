#include "forge/json_io.hpp"

#include <fstream>

#include <json.hpp>

namespace forge {

namespace {

int key_to_int(const std::string& k) {
  try {
    size_t pos = 0;
    int v = std::stoi(k, &pos);
    if (pos != k.size()) throw std::invalid_argument(k);
    return v;
  } catch (const std::exception&) {
    throw MalformedInput("non-integer id key '" + k + "'");
  }
}

}  // namespace

json groupoid_to_json(const Gpd& g) {
  json j;
  j["objects"] = json::array();
  for (int x = 0; x < g->n_objects(); ++x) j["objects"].push_back(g->object_id(x));
  j["arrows"] = json::array();
  for (int a = 0; a < g->n_arrows(); ++a)
    j["arrows"].push_back({{"id", g->arrow_id(a)},
                           {"src", g->object_id(g->src(a))},
                           {"tgt", g->object_id(g->tgt(a))}});
  j["compose"] = json::array();
  for (int f = 0; f < g->n_arrows(); ++f)
    for (int gg = 0; gg < g->n_arrows(); ++gg)
      if (auto c = g->try_compose(gg, f))
        j["compose"].push_back(
            {g->arrow_id(gg), g->arrow_id(f), g->arrow_id(*c)});
  j["id"] = json::object();
  for (int x = 0; x < g->n_objects(); ++x)
    j["id"][std::to_string(g->object_id(x))] = g->arrow_id(g->identity(x));
  j["inv"] = json::object();
  for (int a = 0; a < g->n_arrows(); ++a)
    j["inv"][std::to_string(g->arrow_id(a))] = g->arrow_id(g->inverse(a));
  return j;
}

Gpd groupoid_from_json(const json& j) {
  if (!j.is_object()) throw MalformedInput("groupoid document must be an object");
  for (const char* key : {"objects", "arrows", "compose", "id", "inv"})
    if (!j.contains(key))
      throw MalformedInput(std::string("groupoid document missing '") + key +
                           "'");
  std::vector<int> objects;
  for (const auto& o : j.at("objects")) {
    if (!o.is_number_integer()) throw MalformedInput("object ids must be integers");
    objects.push_back(o.get<int>());
  }
  std::vector<FinGroupoid::ArrowData> arrows;
  for (const auto& a : j.at("arrows")) {
    if (!a.is_object() || !a.contains("id") || !a.contains("src") ||
        !a.contains("tgt"))
      throw MalformedInput("arrow entries need id/src/tgt");
    arrows.push_back({a.at("id").get<int>(), a.at("src").get<int>(),
                      a.at("tgt").get<int>()});
  }
  std::vector<std::array<int, 3>> compose;
  for (const auto& row : j.at("compose")) {
    if (!row.is_array() || row.size() != 3)
      throw MalformedInput("compose rows must be [g,f,gf]");
    compose.push_back({row[0].get<int>(), row[1].get<int>(), row[2].get<int>()});
  }
  std::unordered_map<int, int> identity, inverse;
  for (const auto& [k, v] : j.at("id").items())
    identity[key_to_int(k)] = v.get<int>();
  for (const auto& [k, v] : j.at("inv").items())
    inverse[key_to_int(k)] = v.get<int>();
  return FinGroupoid::from_tables(std::move(objects), std::move(arrows),
                                  std::move(compose), std::move(identity),
                                  std::move(inverse));
}

json map_to_json(const GroupoidMap& m) {
  json j;
  j["obj"] = json::object();
  j["arr"] = json::object();
  const auto& D = *m.dom();
  const auto& C = *m.cod();
  for (int x = 0; x < D.n_objects(); ++x)
    j["obj"][std::to_string(D.object_id(x))] = C.object_id(m.on_object(x));
  for (int a = 0; a < D.n_arrows(); ++a)
    j["arr"][std::to_string(D.arrow_id(a))] = C.arrow_id(m.on_arrow(a));
  return j;
}

GroupoidMap map_from_json(const json& j, Gpd dom, Gpd cod) {
  if (!j.is_object() || !j.contains("obj") || !j.contains("arr"))
    throw MalformedInput("functor document needs 'obj' and 'arr' tables");
  std::vector<int> obj(dom->n_objects(), -1), arr(dom->n_arrows(), -1);
  for (const auto& [k, v] : j.at("obj").items())
    obj.at(dom->object_index(key_to_int(k))) =
        cod->object_index(v.get<int>());
  for (const auto& [k, v] : j.at("arr").items())
    arr.at(dom->arrow_index(key_to_int(k))) = cod->arrow_index(v.get<int>());
  for (int v : obj)
    if (v < 0) throw MalformedInput("functor object table incomplete");
  for (int v : arr)
    if (v < 0) throw MalformedInput("functor arrow table incomplete");
  return GroupoidMap::make(std::move(dom), std::move(cod), std::move(obj),
                           std::move(arr));
}

GroupoidMap map_from_json_auto(const json& j, Gpd dom_override,
                               Gpd cod_override) {
  Gpd dom = dom_override;
  Gpd cod = cod_override;
  if (!dom && j.contains("dom")) dom = groupoid_from_json(j.at("dom"));
  if (!cod && j.contains("cod")) cod = groupoid_from_json(j.at("cod"));
  if (!dom)
    throw MalformedInput("functor document has no 'dom' and none was supplied");
  if (!cod)
    throw MalformedInput("functor document has no 'cod' and none was supplied");
  return map_from_json(j, std::move(dom), std::move(cod));
}

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw MalformedInput("cannot open file: " + path);
  json j;
  try {
    in >> j;
  } catch (const std::exception& e) {
    throw MalformedInput("invalid JSON in " + path + ": " + e.what());
  }
  return j;
}

}  // namespace forge
