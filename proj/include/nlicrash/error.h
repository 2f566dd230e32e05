//
// Copyright 2026 The nlicrash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#ifndef NLICRASH_ERROR_H_
#define NLICRASH_ERROR_H_

#include <stdexcept>
#include <string>

namespace nlicrash {

// Base class for every error the library raises. The CLI maps the concrete
// subclasses onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad flags, bad configuration, unknown tag or preset names.
class UsageError : public Error {
 public:
  using Error::Error;
};

// Input data that violates a domain invariant (unknown label, duplicate uid,
// prediction coverage, malformed records).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// Filesystem failures. The message always names the path.
class IoError : public Error {
 public:
  using Error::Error;
};

// Malformed model files. Carries the byte offset where parsing stopped.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t byte_offset)
      : Error(what + " (at byte offset " + std::to_string(byte_offset) + ")"),
        byte_offset_(byte_offset) {}

  std::size_t byte_offset() const { return byte_offset_; }

 private:
  std::size_t byte_offset_;
};

}  // namespace nlicrash

#endif  // NLICRASH_ERROR_H_
