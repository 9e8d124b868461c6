// Copyright 2026 The Authors.
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

#ifndef DADS_ERRORS_HPP
#define DADS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dads {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition broken by the caller (dimension mismatch, missing input, ...).
class ContractViolation : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class DivergedGain : public Error {
 public:
  using Error::Error;
};

class InfeasiblePartition : public Error {
 public:
  using Error::Error;
};

class UndefinedSubspace : public Error {
 public:
  using Error::Error;
};

class ConstraintError : public Error {
 public:
  using Error::Error;
};

class UnknownId : public Error {
 public:
  using Error::Error;
};

class ConstructionError : public Error {
 public:
  using Error::Error;
};

// A module error re-raised with the step and sensor where it occurred.
class RunError : public Error {
 public:
  using Error::Error;
};

template <typename E = ContractViolation>
inline void require(bool condition, const std::string& message) {
  if (!condition) throw E(message);
}

}  // namespace dads

#endif  // DADS_ERRORS_HPP
