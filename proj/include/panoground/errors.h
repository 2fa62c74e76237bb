// Copyright 2026 The Panoground Authors. All Rights Reserved.
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

#ifndef PANOGROUND_ERRORS_H_
#define PANOGROUND_ERRORS_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace panoground {

// Machine-readable failure classes. The CLI maps each to a distinct exit
// status and prints the name in its error line.
enum class ErrorCode {
  kInvalidArgument = 2,
  kParse = 3,
  kIntegrity = 4,
  kIo = 5,
  kNotFound = 6,
};

std::string_view ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

// Malformed input. `location` is "file:line" or "offset N", whichever the
// parser knows.
class ParseError : public Error {
 public:
  ParseError(const std::string& location, const std::string& message)
      : Error(ErrorCode::kParse, location + ": " + message),
        location_(location) {}

  const std::string& location() const { return location_; }

 private:
  std::string location_;
};

class IntegrityError : public Error {
 public:
  explicit IntegrityError(const std::string& message)
      : Error(ErrorCode::kIntegrity, message) {}
};

class NotFoundError : public Error {
 public:
  explicit NotFoundError(const std::string& message)
      : Error(ErrorCode::kNotFound, message) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& message)
      : Error(ErrorCode::kIo, message) {}
};

class InvalidArgumentError : public Error {
 public:
  explicit InvalidArgumentError(const std::string& message)
      : Error(ErrorCode::kInvalidArgument, message) {}
};

// Reads a whole file; throws IoError when it cannot be opened.
std::string ReadFileToString(const std::string& path);

}  // namespace panoground

#endif  // PANOGROUND_ERRORS_H_
