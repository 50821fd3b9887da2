#include "cbd/format.hpp"

#include <fstream>
#include <sstream>

#include "json_util.hpp"

namespace cbd {

System parse_system(std::string_view text) {
  const json doc = parse_json(text);
  require_format(doc, kSystemFormat);
  const std::string name = require_string(doc, "name");
  const json& contexts = require_array(doc, "contexts");

  std::vector<ContextDistribution> out;
  for (const json& c : contexts) {
    if (!c.is_object()) throw ParseError("context entry is not an object");
    ContextId id(require_string(c, "id"));
    const std::string where = "context '" + id.str() + "'";
    std::vector<PropertyId> properties;
    for (const json& p : require_array(c, "properties")) {
      if (!p.is_string()) throw ParseError(where + ": property labels must be strings");
      properties.emplace_back(p.get<std::string>());
    }
    std::sort(properties.begin(), properties.end());
    if (properties.size() > kMaxContextArity) {
      throw ValidationError(where + ": more than " + std::to_string(kMaxContextArity) + " properties");
    }

    const json& table = require_object(c, "table");
    std::map<TupleIndex, Rational> cells;
    for (const auto& [key, value] : table.items()) {
      TupleIndex tuple;
      try {
        tuple = parse_tuple(key, properties.size());
      } catch (const ValidationError& e) {
        throw ValidationError(where + ": wrong tuple arity: " + e.what());
      }
      if (!value.is_string()) throw ParseError(where + ": probability for '" + key + "' must be a string");
      const Rational p = parse_rational(value.get<std::string>());
      if (p < 0 || p > 1) {
        throw ValidationError(where + ": probability " + to_string(p) + " for '" + key + "' outside [0, 1]");
      }
      if (!cells.emplace(tuple, p).second) throw ValidationError(where + ": duplicate tuple '" + key + "'");
    }
    out.push_back(ContextDistribution::from_sparse(std::move(id), std::move(properties), cells));
  }
  return System(name, std::move(out));
}

std::string serialize_system(const System& system) {
  ordered_json doc;
  doc["format"] = kSystemFormat;
  doc["name"] = system.name();
  ordered_json contexts = ordered_json::array();
  for (const auto& c : system.contexts()) {
    ordered_json entry;
    entry["id"] = c.id().str();
    ordered_json props = ordered_json::array();
    for (const auto& p : c.properties()) props.push_back(p.str());
    entry["properties"] = std::move(props);
    ordered_json table = ordered_json::object();
    for (TupleIndex t = 0; t < c.table().size(); ++t) {
      if (c.table()[t].value() != 0) table[tuple_to_string(t, c.arity())] = to_string(c.table()[t].value());
    }
    entry["table"] = std::move(table);
    contexts.push_back(std::move(entry));
  }
  doc["contexts"] = std::move(contexts);
  return doc.dump(2) + "\n";
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

System load_system(const std::string& path) { return parse_system(read_file(path)); }

}  // namespace cbd
