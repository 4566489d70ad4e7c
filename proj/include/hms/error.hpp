// Copyright 2026 The HMS Authors
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

#ifndef HMS_ERROR_HPP_
#define HMS_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace hms {

enum class ErrorKind {
  kInvalidSolution,
  kInvalidInput,
  kUndefinedRatio,
  kParameter,
  kDegenerateInstance,
  kTooManyClusters,
  kEmptyAfterFilter,
  kBudgetExceeded,
  kParse,
  kIo,
};

inline const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kInvalidSolution: return "invalid-solution";
    case ErrorKind::kInvalidInput: return "invalid-input";
    case ErrorKind::kUndefinedRatio: return "undefined-ratio";
    case ErrorKind::kParameter: return "parameter";
    case ErrorKind::kDegenerateInstance: return "degenerate-instance";
    case ErrorKind::kTooManyClusters: return "too-many-clusters";
    case ErrorKind::kEmptyAfterFilter: return "empty-after-filter";
    case ErrorKind::kBudgetExceeded: return "budget-exceeded";
    case ErrorKind::kParse: return "parse";
    case ErrorKind::kIo: return "io";
  }
  return "unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind) {}

  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace hms

#endif  // HMS_ERROR_HPP_
