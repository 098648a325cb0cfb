// Copyright 2026 The Chronoret Authors.
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

#ifndef CHRONORET_ERROR_HPP_
#define CHRONORET_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace chronoret {

// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: malformed config, impossible generator settings, bad flags.
// The CLI maps these to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

// Malformed serialized data (dates, JSONL records, PPM payloads).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Referential or structural violation found while loading data.
class IntegrityError : public Error {
 public:
  using Error::Error;
};

// Numerical breakdown during optimization.
class TrainingError : public Error {
 public:
  using Error::Error;
};

// Network or protocol failure talking to a chat-completion endpoint.
class TransportError : public Error {
 public:
  using Error::Error;
};

}  // namespace chronoret

#endif  // CHRONORET_ERROR_HPP_
