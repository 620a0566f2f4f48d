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

#include "panotrack/error.h"

#include <sstream>

namespace panotrack {
namespace internal {

void FailCheck(const char* expr, const char* file, int line,
               const std::string& message) {
  std::ostringstream out;
  out << "invariant violated: " << expr << " at " << file << ":" << line;
  if (!message.empty()) {
    out << " (" << message << ")";
  }
  throw InternalError(out.str());
}

}  // namespace internal
}  // namespace panotrack
