#pragma once

#include <string>

#include <json.hpp>

namespace nerf {

struct SchemaResult {
  bool ok = true;
  std::string error;
};

// Checks the subset of JSON Schema the shipped schemas use: type (string or
// list), required, properties, items, enum. Unknown keywords are ignored.
inline SchemaResult validate_schema(const nlohmann::json& schema, const nlohmann::json& doc,
                                    const std::string& path = "$") {
  auto fail = [&](const std::string& msg) {
    return SchemaResult{false, path + ": " + msg};
  };

  if (schema.contains("type")) {
    auto matches = [&](const std::string& t) {
      if (t == "object") return doc.is_object();
      if (t == "array") return doc.is_array();
      if (t == "string") return doc.is_string();
      if (t == "integer") return doc.is_number_integer() || doc.is_number_unsigned();
      if (t == "number") return doc.is_number();
      if (t == "boolean") return doc.is_boolean();
      if (t == "null") return doc.is_null();
      return false;
    };
    const auto& ty = schema["type"];
    bool ok = false;
    if (ty.is_string()) {
      ok = matches(ty.get<std::string>());
    } else if (ty.is_array()) {
      for (const auto& t : ty)
        if (matches(t.get<std::string>())) { ok = true; break; }
    }
    if (!ok) return fail("type mismatch, got " + std::string(doc.type_name()));
  }

  if (schema.contains("enum")) {
    bool ok = false;
    for (const auto& v : schema["enum"])
      if (v == doc) { ok = true; break; }
    if (!ok) return fail("value not in enum");
  }

  if (doc.is_object()) {
    if (schema.contains("required")) {
      for (const auto& r : schema["required"]) {
        std::string name = r.get<std::string>();
        if (!doc.contains(name)) return fail("missing required member '" + name + "'");
      }
    }
    if (schema.contains("properties")) {
      for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it) {
        if (!doc.contains(it.key())) continue;
        SchemaResult r = validate_schema(it.value(), doc[it.key()], path + "." + it.key());
        if (!r.ok) return r;
      }
    }
  }

  if (doc.is_array() && schema.contains("items")) {
    std::size_t i = 0;
    for (const auto& el : doc) {
      SchemaResult r =
          validate_schema(schema["items"], el, path + "[" + std::to_string(i) + "]");
      if (!r.ok) return r;
      ++i;
    }
  }

  return {};
}

}  // namespace nerf
