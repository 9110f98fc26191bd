#pragma once

// Minimal structural JSON-schema checker covering the keywords the
// shipped schemas use: type, required, properties, items, enum,
// minItems, minimum, exclusiveMinimum, exclusiveMaximum.

#include <string>
#include <vector>

#include <json.hpp>

namespace testsupport {

using Json = nlohmann::json;

inline bool type_matches(const Json& value, const std::string& type) {
    if (type == "object") return value.is_object();
    if (type == "array") return value.is_array();
    if (type == "string") return value.is_string();
    if (type == "number") return value.is_number();
    if (type == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (type == "boolean") return value.is_boolean();
    if (type == "null") return value.is_null();
    return false;
}

inline void check_schema(const Json& value, const Json& schema, const std::string& path,
                         std::vector<std::string>& violations) {
    if (schema.contains("type")) {
        const auto& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else if (t.is_array()) {
            for (const auto& option : t)
                if (type_matches(value, option.get<std::string>())) ok = true;
        }
        if (!ok) {
            violations.push_back(path + ": type mismatch (value is " +
                                 std::string(value.type_name()) + ")");
            return;
        }
    }
    if (schema.contains("enum")) {
        bool found = false;
        for (const auto& option : schema["enum"])
            if (option == value) found = true;
        if (!found) violations.push_back(path + ": value not in enum");
    }
    if (value.is_number() && schema.contains("minimum") &&
        value.get<double>() < schema["minimum"].get<double>())
        violations.push_back(path + ": below minimum");
    if (value.is_number() && schema.contains("exclusiveMinimum") &&
        value.get<double>() <= schema["exclusiveMinimum"].get<double>())
        violations.push_back(path + ": not above exclusiveMinimum");
    if (value.is_number() && schema.contains("exclusiveMaximum") &&
        value.get<double>() >= schema["exclusiveMaximum"].get<double>())
        violations.push_back(path + ": not below exclusiveMaximum");
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    violations.push_back(path + ": missing required key '" +
                                         key.get<std::string>() + "'");
        if (schema.contains("properties"))
            for (const auto& [key, sub] : schema["properties"].items())
                if (value.contains(key))
                    check_schema(value[key], sub, path + "/" + key, violations);
    }
    if (value.is_array()) {
        if (schema.contains("minItems") && value.size() < schema["minItems"].get<std::size_t>())
            violations.push_back(path + ": fewer than minItems entries");
        if (schema.contains("items"))
            for (std::size_t i = 0; i < value.size(); ++i)
                check_schema(value[i], schema["items"], path + "[" + std::to_string(i) + "]",
                             violations);
    }
}

inline std::vector<std::string> schema_violations(const Json& value, const Json& schema) {
    std::vector<std::string> violations;
    check_schema(value, schema, "$", violations);
    return violations;
}

}  // namespace testsupport
