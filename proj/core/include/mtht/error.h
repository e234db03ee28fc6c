// error.h
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
//
// Copyright 2026 The mtht Authors.
//
// \file
// Exception hierarchy shared by all mtht modules.

#ifndef MTHT_ERROR_H_
#define MTHT_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace mtht {

// Base class for every recoverable data error raised by the library. The
// command-line tool maps these to exit status 2.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file. Carries the 1-based line number of the offending
// line (0 when the problem is not tied to one line).
class ParseError : public Error {
 public:
  ParseError(const std::string &source, std::size_t line,
             const std::string &what)
      : Error(source + (line ? ":" + std::to_string(line) : std::string()) +
              ": " + what),
        line_(line) {}

  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// A file could not be opened for reading or writing.
class IoError : public Error {
 public:
  explicit IoError(const std::string &path, const std::string &what = "cannot open")
      : Error(what + ": " + path), path_(path) {}

  const std::string &path() const { return path_; }

 private:
  std::string path_;
};

// MTLD is undefined when a scan direction completes zero factors.
class UndefinedMtld : public Error {
 public:
  using Error::Error;
};

// Nearest-neighbor query for a token the embedding store does not hold.
class NotInVocabulary : public Error {
 public:
  explicit NotInVocabulary(const std::string &token)
      : Error("not in embedding vocabulary: " + token), token_(token) {}

  const std::string &token() const { return token_; }

 private:
  std::string token_;
};

}  // namespace mtht

#endif  // MTHT_ERROR_H_
