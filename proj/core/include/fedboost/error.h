// Copyright 2026 The FedBoost Authors.
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

#ifndef FEDBOOST_ERROR_H_
#define FEDBOOST_ERROR_H_

#include <cstddef>
#include <stdexcept>
#include <string>

namespace fedboost {

// Root of every exception thrown by the library. Each subclass corresponds to
// one failure category; the CLI maps categories onto process exit codes.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Caller passed a value outside an operation's precondition.
class ArgumentError : public Error {
 public:
  using Error::Error;
};

// Inputs that should agree with each other do not (e.g. histogram totals).
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

// Ciphertexts or keys from different Paillier key pairs were mixed.
class KeyError : public Error {
 public:
  using Error::Error;
};

// A fixed-point value would overflow the plaintext space.
class RangeError : public Error {
 public:
  using Error::Error;
};

// A federated party violated or could not complete the protocol.
class ProtocolError : public Error {
 public:
  using Error::Error;
};

class AlignmentError : public ProtocolError {
 public:
  using ProtocolError::ProtocolError;
};

// Input text could not be parsed. `line` is 1-based, 0 when unknown.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what),
        line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

// Parsed input violates a dataset invariant (missing cell, duplicate id...).
class ValidationError : public ParseError {
 public:
  using ParseError::ParseError;
};

class SplitError : public Error {
 public:
  using Error::Error;
};

class DegenerateLabelError : public Error {
 public:
  using Error::Error;
};

class UndefinedInputError : public Error {
 public:
  using Error::Error;
};

// Run configuration is malformed; message carries the offending field path.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Model document is missing or corrupt.
class ModelError : public Error {
 public:
  using Error::Error;
};

}  // namespace fedboost

#endif  // FEDBOOST_ERROR_H_
