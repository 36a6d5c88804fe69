#pragma once

// Minimal structural validator for the committed report schemas. Supports the
// subset actually used there: type (string or list), required, properties,
// items, enum. Unknown document keys are allowed by design.

#include <fstream>
#include <string>
#include <vector>

#include "json.hpp"

namespace testutil {

inline bool type_matches(const nlohmann::json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "boolean") return value.is_boolean();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "number") return value.is_number();
    if (type == "null") return value.is_null();
    return false;
}

inline void validate_schema(const nlohmann::json& value, const nlohmann::json& schema,
                            const std::string& path, std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else {
            for (const auto& alt : t) ok = ok || type_matches(value, alt.get<std::string>());
        }
        if (!ok) {
            errors.push_back(path + ": type mismatch, got " + std::string(value.type_name()));
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& option : schema["enum"]) ok = ok || option == value;
        if (!ok) errors.push_back(path + ": value not in enum");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    errors.push_back(path + ": missing required key " + key.get<std::string>());
        if (schema.contains("properties"))
            for (const auto& [key, sub] : schema["properties"].items())
                if (value.contains(key)) validate_schema(value[key], sub, path + "." + key, errors);
    }
    if (value.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i)
            validate_schema(value[i], schema["items"], path + "[" + std::to_string(i) + "]",
                            errors);
    }
}

inline std::vector<std::string> check_against_schema_file(const nlohmann::json& value,
                                                          const std::string& schema_path) {
    std::ifstream in(schema_path);
    REQUIRE_MESSAGE(in.good(), "cannot open schema file ", schema_path);
    nlohmann::json schema;
    in >> schema;
    std::vector<std::string> errors;
    validate_schema(value, schema, "$", errors);
    return errors;
}

}  // namespace testutil
