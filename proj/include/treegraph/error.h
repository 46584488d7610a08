// Copyright 2026 The Treegraph Authors.
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

#ifndef TREEGRAPH_ERROR_H_
#define TREEGRAPH_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace treegraph {

enum class ErrorCode {
  kUnknownAnchor,
  kUnknownArc,
  kInvalidSpan,
  kCycle,
  kAmbiguousSibling,
  kPrecondition,
  kReferenced,
  kParse,
  kConversionLoss,
  kUnlabeledNode,
  kInvalidArgument,
};

std::string_view error_code_name(ErrorCode code);

// Single exception type for the library. The code lets callers (CLI exit
// status, HTTP status) classify failures without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Parse failures carry a 1-based source position when one is known.
class ParseError : public Error {
 public:
  ParseError(const std::string& message, int line = 0, int column = 0);

  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

}  // namespace treegraph

#endif  // TREEGRAPH_ERROR_H_
