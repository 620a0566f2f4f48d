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

#ifndef PANOTRACK_ERROR_H_
#define PANOTRACK_ERROR_H_

#include <stdexcept>
#include <string>

namespace panotrack {

// Malformed or inconsistent input: bad files, mismatched dimensions, schema
// violations, out-of-range parameters. Maps to process exit code 1.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A broken internal invariant. Indicates a bug in this library, not bad
// input. Maps to process exit code 2.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace internal {
[[noreturn]] void FailCheck(const char* expr, const char* file, int line,
                            const std::string& message);
}  // namespace internal

// Invariant check. Throws InternalError with source location on failure.
#define PT_CHECK(expr)                                                    \
  do {                                                                    \
    if (!(expr)) {                                                        \
      ::panotrack::internal::FailCheck(#expr, __FILE__, __LINE__, "");    \
    }                                                                     \
  } while (false)

#define PT_CHECK_MSG(expr, msg)                                           \
  do {                                                                    \
    if (!(expr)) {                                                        \
      ::panotrack::internal::FailCheck(#expr, __FILE__, __LINE__, (msg)); \
    }                                                                     \
  } while (false)

}  // namespace panotrack

#endif  // PANOTRACK_ERROR_H_
