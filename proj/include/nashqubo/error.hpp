// Copyright 2026 The nashqubo Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//   http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nashqubo {

enum class ErrorKind {
  dimension,
  parameter,
  parse,
  compile,
  capacity,
  integrity,
  process,
  protocol,
  certification,
};

inline std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::dimension: return "dimension";
    case ErrorKind::parameter: return "parameter";
    case ErrorKind::parse: return "parse";
    case ErrorKind::compile: return "compile";
    case ErrorKind::capacity: return "capacity";
    case ErrorKind::integrity: return "integrity";
    case ErrorKind::process: return "process";
    case ErrorKind::protocol: return "protocol";
    case ErrorKind::certification: return "certification";
  }
  return "unknown";
}

/// Base class of every error thrown by the library. The kind is what the CLI
/// reports in its machine-readable error document.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

template <ErrorKind K>
class KindedError : public Error {
 public:
  explicit KindedError(const std::string& what) : Error(K, what) {}
};

using DimensionError = KindedError<ErrorKind::dimension>;
using ParameterError = KindedError<ErrorKind::parameter>;
using ParseError = KindedError<ErrorKind::parse>;
using CompileError = KindedError<ErrorKind::compile>;
using CapacityError = KindedError<ErrorKind::capacity>;
using IntegrityError = KindedError<ErrorKind::integrity>;
using ProcessError = KindedError<ErrorKind::process>;
using ProtocolError = KindedError<ErrorKind::protocol>;
using CertificationError = KindedError<ErrorKind::certification>;

}  // namespace nashqubo
