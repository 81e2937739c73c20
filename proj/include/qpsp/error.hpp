// Copyright 2026 The qpsp Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace qpsp {

// All library failures derive from Error so callers can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A numeric argument outside the domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed bitstrings or turn sequences.
class CodecError : public Error {
 public:
  using Error::Error;
};

// Invalid energy parameters, contact matrices or residue letters.
class ParameterError : public Error {
 public:
  using Error::Error;
};

// A computation would exceed its configured budget (memory, nodes, time).
class ResourceError : public Error {
 public:
  using Error::Error;
};

}  // namespace qpsp
