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

#ifndef PANOTRACK_SRC_IO_JSON_UTIL_H_
#define PANOTRACK_SRC_IO_JSON_UTIL_H_

#include <string>

#include "json.hpp"

namespace panotrack::io {

// Parses a JSON file, turning open and parse failures into located
// InputErrors.
nlohmann::json LoadJsonFile(const std::string& path);

void WriteTextFile(const std::string& path, const std::string& content);

// Schema-checked field access. `where` names the enclosing value in error
// messages, e.g. "frames[3][0]".
const nlohmann::json& Field(const nlohmann::json& object, const char* key,
                            const std::string& where);
std::int64_t IntField(const nlohmann::json& object, const char* key,
                      const std::string& where);
double DoubleField(const nlohmann::json& object, const char* key,
                   const std::string& where);
std::string StringField(const nlohmann::json& object, const char* key,
                        const std::string& where);

// Requires doc["schema"] to equal `expected`.
void RequireSchema(const nlohmann::json& doc, const char* expected,
                   const std::string& where);

}  // namespace panotrack::io

#endif  // PANOTRACK_SRC_IO_JSON_UTIL_H_
