// Copyright 2026 The vowelprint Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Validator for the JSON Schema keywords the report schema uses: type,
// properties, required, additionalProperties (boolean), items, enum, const,
// minimum, maximum, minItems, maxItems and local $ref into #/$defs.

#ifndef VOWELPRINT_TESTS_SCHEMA_CHECK_HPP_
#define VOWELPRINT_TESTS_SCHEMA_CHECK_HPP_

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

namespace vptest {

class SchemaCheck {
 public:
  explicit SchemaCheck(nlohmann::json root) : root_(std::move(root)) {}

  // Empty result means the document is valid.
  std::vector<std::string> errors(const nlohmann::json& doc) const {
    std::vector<std::string> out;
    check(root_, doc, "$", out);
    return out;
  }

 private:
  static bool type_matches(const std::string& t, const nlohmann::json& v) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    if (t == "integer") return v.is_number_integer();
    if (t == "number") return v.is_number();
    return false;
  }

  void check(const nlohmann::json& s, const nlohmann::json& v, const std::string& at,
             std::vector<std::string>& out) const {
    static const std::set<std::string> kKnown = {
        "$schema", "$id",      "title",   "description", "type",     "properties",
        "required", "additionalProperties", "items",       "enum",     "const",
        "minimum", "maximum",  "minItems", "maxItems",    "$ref",     "$defs"};
    for (const auto& [key, _] : s.items()) {
      if (!kKnown.contains(key)) out.push_back(at + ": unsupported keyword " + key);
    }
    if (s.contains("$ref")) {
      const std::string ref = s["$ref"];
      const std::string prefix = "#/$defs/";
      if (ref.rfind(prefix, 0) != 0) {
        out.push_back(at + ": unsupported $ref " + ref);
        return;
      }
      check(root_.at("$defs").at(ref.substr(prefix.size())), v, at, out);
    }
    if (s.contains("type")) {
      bool ok = false;
      if (s["type"].is_array()) {
        for (const auto& t : s["type"]) ok = ok || type_matches(t, v);
      } else {
        ok = type_matches(s["type"], v);
      }
      if (!ok) {
        out.push_back(at + ": expected type " + s["type"].dump() + ", got " + v.type_name());
        return;
      }
    }
    if (s.contains("const") && s["const"] != v) out.push_back(at + ": const mismatch");
    if (s.contains("enum")) {
      bool found = false;
      for (const auto& e : s["enum"]) found = found || e == v;
      if (!found) out.push_back(at + ": value not in enum");
    }
    if (v.is_number()) {
      if (s.contains("minimum") && v.get<double>() < s["minimum"].get<double>()) {
        out.push_back(at + ": below minimum");
      }
      if (s.contains("maximum") && v.get<double>() > s["maximum"].get<double>()) {
        out.push_back(at + ": above maximum");
      }
    }
    if (v.is_object()) {
      if (s.contains("required")) {
        for (const auto& r : s["required"]) {
          if (!v.contains(r.get<std::string>())) out.push_back(at + ": missing " + r.get<std::string>());
        }
      }
      const auto props = s.value("properties", nlohmann::json::object());
      for (const auto& [key, val] : v.items()) {
        if (props.contains(key)) {
          check(props[key], val, at + "." + key, out);
        } else if (s.contains("additionalProperties") && s["additionalProperties"] == false) {
          out.push_back(at + ": unexpected property " + key);
        }
      }
    }
    if (v.is_array()) {
      if (s.contains("minItems") && v.size() < s["minItems"].get<std::size_t>()) {
        out.push_back(at + ": too few items");
      }
      if (s.contains("maxItems") && v.size() > s["maxItems"].get<std::size_t>()) {
        out.push_back(at + ": too many items");
      }
      if (s.contains("items")) {
        for (std::size_t i = 0; i < v.size(); ++i) {
          check(s["items"], v[i], at + "[" + std::to_string(i) + "]", out);
        }
      }
    }
  }

  nlohmann::json root_;
};

}  // namespace vptest

#endif  // VOWELPRINT_TESTS_SCHEMA_CHECK_HPP_
