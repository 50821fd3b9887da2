#include "cbd/documents.hpp"

#include "json_util.hpp"

namespace cbd {
namespace {

ordered_json cells_json(const std::vector<Cell>& cells) {
  ordered_json out = ordered_json::array();
  for (const auto& c : cells) out.push_back({{"property", c.property.str()}, {"context", c.context.str()}});
  return out;
}

ordered_json table_json(const std::map<TupleIndex, Rational>& table, std::size_t arity) {
  ordered_json out = ordered_json::object();
  for (const auto& [t, mass] : table) {
    if (mass != 0) out[tuple_to_string(t, arity)] = to_string(mass);
  }
  return out;
}

std::string kind_name(LpRow::Kind kind) {
  switch (kind) {
    case LpRow::Kind::normalization:
      return "normalization";
    case LpRow::Kind::context:
      return "context";
    case LpRow::Kind::pair:
      return "pair";
  }
  return "pair";
}

Predicate parse_predicate(const json& c) {
  const std::string name = require_string(c, "predicate");
  auto count = [&](const char* key) {
    const json& v = require(c, key);
    if (!v.is_number_unsigned()) throw ParseError(std::string("field \"") + key + "\" must be a non-negative integer");
    return v.get<std::size_t>();
  };
  if (name == "exactly_k") return Predicate::exactly(count("k"));
  if (name == "at_most_k") return Predicate::at_most(count("k"));
  if (name == "all_equal") return Predicate::all_equal(count("value"));
  throw ParseError("unknown predicate \"" + name + "\"");
}

}  // namespace

std::string serialize_coupling(const ConnectionCoupling& coupling) {
  ordered_json doc;
  doc["format"] = kCouplingFormat;
  doc["property"] = coupling.property.str();
  ordered_json contexts = ordered_json::array();
  std::vector<Cell> cells;
  for (const auto& c : coupling.contexts) {
    contexts.push_back(c.str());
    cells.push_back({coupling.property, c});
  }
  doc["contexts"] = std::move(contexts);
  doc["cells"] = cells_json(cells);
  doc["table"] = table_json(coupling.table, coupling.arity());
  return doc.dump(2) + "\n";
}

std::string serialize_coupling(const SystemCoupling& coupling) {
  ordered_json doc;
  doc["format"] = kCouplingFormat;
  doc["cells"] = cells_json(coupling.cells);
  doc["table"] = table_json(coupling.table, coupling.cells.size());
  return doc.dump(2) + "\n";
}

SystemCoupling parse_system_coupling(std::string_view text) {
  const json doc = parse_json(text);
  require_format(doc, kCouplingFormat);
  SystemCoupling out;
  for (const json& c : require_array(doc, "cells")) {
    out.cells.push_back({PropertyId(require_string(c, "property")), ContextId(require_string(c, "context"))});
  }
  for (const auto& [key, value] : require_object(doc, "table").items()) {
    if (!value.is_string()) throw ParseError("coupling masses must be strings");
    const TupleIndex t = parse_tuple(key, out.cells.size());
    if (!out.table.emplace(t, parse_rational(value.get<std::string>())).second) {
      throw ValidationError("duplicate tuple '" + key + "'");
    }
  }
  return out;
}

std::string serialize_certificate(const System& system, const CouplingLP& lp, const FarkasCertificate& certificate) {
  if (certificate.multipliers.size() != lp.rows()) throw DimensionError("certificate length differs from LP rows");
  ordered_json doc;
  doc["format"] = kCertificateFormat;
  doc["system"] = system.name();
  doc["mode"] = to_string(lp.mode());
  Rational value = 0;
  ordered_json rows = ordered_json::array();
  for (std::size_t i = 0; i < lp.rows(); ++i) {
    const auto& row = lp.constraint_rows()[i];
    value += certificate.multipliers[i] * row.rhs;
    rows.push_back({{"index", i},
                    {"kind", kind_name(row.kind)},
                    {"description", row.description},
                    {"rhs", to_string(row.rhs)},
                    {"multiplier", to_string(certificate.multipliers[i])}});
  }
  doc["value"] = to_string(value);
  doc["constraints"] = std::move(rows);
  return doc.dump(2) + "\n";
}

FarkasCertificate parse_certificate(std::string_view text) {
  const json doc = parse_json(text);
  require_format(doc, kCertificateFormat);
  FarkasCertificate out;
  for (const json& row : require_array(doc, "constraints")) {
    out.multipliers.push_back(parse_rational(require_string(row, "multiplier")));
  }
  return out;
}

ConstraintSystem parse_constraints(std::string_view text) {
  const json doc = parse_json(text);
  if (doc.is_object() && doc.contains("format")) require_format(doc, kConstraintsFormat);
  std::vector<PropertyId> properties;
  for (const json& p : require_array(doc, "properties")) {
    if (!p.is_string()) throw ParseError("property labels must be strings");
    properties.emplace_back(p.get<std::string>());
  }
  std::vector<Constraint> constraints;
  for (const json& c : require_array(doc, "constraints")) {
    Constraint con;
    for (const json& p : require_array(c, "scope")) {
      if (!p.is_string()) throw ParseError("scope labels must be strings");
      con.scope.emplace_back(p.get<std::string>());
    }
    con.predicate = parse_predicate(c);
    constraints.push_back(std::move(con));
  }
  return ConstraintSystem(std::move(properties), std::move(constraints));
}

std::string serialize_constraints(const ConstraintSystem& cs) {
  ordered_json doc;
  doc["format"] = kConstraintsFormat;
  ordered_json props = ordered_json::array();
  for (const auto& p : cs.properties()) props.push_back(p.str());
  doc["properties"] = std::move(props);
  ordered_json constraints = ordered_json::array();
  for (const auto& c : cs.constraints()) {
    ordered_json entry;
    ordered_json scope = ordered_json::array();
    for (const auto& p : c.scope) scope.push_back(p.str());
    entry["scope"] = std::move(scope);
    switch (c.predicate.kind) {
      case Predicate::Kind::exactly_k:
        entry["predicate"] = "exactly_k";
        entry["k"] = c.predicate.k;
        break;
      case Predicate::Kind::at_most_k:
        entry["predicate"] = "at_most_k";
        entry["k"] = c.predicate.k;
        break;
      case Predicate::Kind::all_equal:
        entry["predicate"] = "all_equal";
        entry["value"] = c.predicate.k;
        break;
    }
    constraints.push_back(std::move(entry));
  }
  doc["constraints"] = std::move(constraints);
  return doc.dump(2) + "\n";
}

}  // namespace cbd
