// Copyright 2026 The qillum Authors
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

#ifndef QILLUM_ERRORS_H_
#define QILLUM_ERRORS_H_

#include <stdexcept>
#include <string>

namespace qillum {

// A parameter lies outside its physical domain (reflectivity, probability,
// noise fraction, sweep grid value, ...).
class DomainError : public std::domain_error {
 public:
  explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

// A normalization or ratio is undefined because the state or count table has
// (numerically) zero weight where a division is required.
class DegenerateStateError : public std::runtime_error {
 public:
  explicit DegenerateStateError(const std::string& what)
      : std::runtime_error(what) {}
};

// A caller broke a documented precondition (e.g. unsorted event stream).
class ContractViolation : public std::logic_error {
 public:
  explicit ContractViolation(const std::string& what)
      : std::logic_error(what) {}
};

// A density matrix failed its Hermiticity / positivity / trace checks.
class InvalidStateError : public std::invalid_argument {
 public:
  explicit InvalidStateError(const std::string& what)
      : std::invalid_argument(what) {}
};

}  // namespace qillum

#endif  // QILLUM_ERRORS_H_
