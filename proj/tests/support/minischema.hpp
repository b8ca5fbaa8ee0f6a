// Structural validation of JSON documents against the subset of JSON Schema
// used by the published schema files: type (scalar or list), enum,
// properties/required, items.
#ifndef KGT_TEST_MINISCHEMA_HPP
#define KGT_TEST_MINISCHEMA_HPP

#include <json.hpp>
#include <string>

namespace minischema {

using json = nlohmann::json;

inline bool type_matches(const json& value, const std::string& t) {
    if (t == "object") return value.is_object();
    if (t == "array") return value.is_array();
    if (t == "string") return value.is_string();
    if (t == "boolean") return value.is_boolean();
    if (t == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (t == "number") return value.is_number();
    if (t == "null") return value.is_null();
    return false;
}

inline bool validate(const json& value, const json& schema, std::string& err,
                     const std::string& path = "$") {
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) ok = type_matches(value, t.get<std::string>());
        else
            for (const auto& alt : t) ok = ok || type_matches(value, alt.get<std::string>());
        if (!ok) {
            err = path + ": type mismatch";
            return false;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema["enum"]) ok = ok || alt == value;
        if (!ok) {
            err = path + ": not in enum";
            return false;
        }
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>())) {
                    err = path + ": missing required key " + key.get<std::string>();
                    return false;
                }
        if (schema.contains("properties"))
            for (auto it = schema["properties"].begin(); it != schema["properties"].end(); ++it)
                if (value.contains(it.key()))
                    if (!validate(value[it.key()], it.value(), err, path + "." + it.key()))
                        return false;
    }
    if (value.is_array() && schema.contains("items")) {
        for (std::size_t i = 0; i < value.size(); ++i)
            if (!validate(value[i], schema["items"], err, path + "[" + std::to_string(i) + "]"))
                return false;
    }
    return true;
}

}  // namespace minischema

#endif
