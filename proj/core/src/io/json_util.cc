// Copyright 2026 The Panotrack Authors.
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

#include "io/json_util.h"

#include <fstream>

#include "panotrack/error.h"

namespace panotrack::io {

nlohmann::json LoadJsonFile(const std::string& path) {
  std::ifstream stream(path);
  if (!stream) {
    throw InputError("cannot open " + path + " for reading");
  }
  try {
    return nlohmann::json::parse(stream);
  } catch (const nlohmann::json::parse_error& error) {
    throw InputError(path + ": " + error.what());
  }
}

void WriteTextFile(const std::string& path, const std::string& content) {
  std::ofstream stream(path, std::ios::binary);
  if (!stream) {
    throw InputError("cannot open " + path + " for writing");
  }
  stream << content;
  if (!stream) {
    throw InputError("failed to write " + path);
  }
}

const nlohmann::json& Field(const nlohmann::json& object, const char* key,
                            const std::string& where) {
  if (!object.is_object()) {
    throw InputError(where + ": expected an object");
  }
  const auto it = object.find(key);
  if (it == object.end()) {
    throw InputError(where + "." + key + ": missing field");
  }
  return *it;
}

std::int64_t IntField(const nlohmann::json& object, const char* key,
                      const std::string& where) {
  const nlohmann::json& value = Field(object, key, where);
  if (!value.is_number_integer()) {
    throw InputError(where + "." + key + ": expected an integer");
  }
  return value.get<std::int64_t>();
}

double DoubleField(const nlohmann::json& object, const char* key,
                   const std::string& where) {
  const nlohmann::json& value = Field(object, key, where);
  if (!value.is_number()) {
    throw InputError(where + "." + key + ": expected a number");
  }
  return value.get<double>();
}

std::string StringField(const nlohmann::json& object, const char* key,
                        const std::string& where) {
  const nlohmann::json& value = Field(object, key, where);
  if (!value.is_string()) {
    throw InputError(where + "." + key + ": expected a string");
  }
  return value.get<std::string>();
}

void RequireSchema(const nlohmann::json& doc, const char* expected,
                   const std::string& where) {
  const std::string found = StringField(doc, "schema", where);
  if (found != expected) {
    throw InputError(where + ".schema: expected \"" + expected +
                     "\", got \"" + found + "\"");
  }
}

}  // namespace panotrack::io
