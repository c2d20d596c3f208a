// Copyright 2026 The loqc-frontier Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace loqc {

/// Matrix/vector dimensions do not match what an operation requires.
struct ShapeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A configured size cap (basis dimension, permanent order) was exceeded.
struct CapacityError : std::length_error {
  using std::length_error::length_error;
};

/// An operand that must be nonzero (matrix norm, amplitude mass) vanished.
struct NormError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Fidelity requested for a zero contraction map.
struct FidelityUndefinedError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Unitary dilation requested for a matrix with spectral norm > 1.
struct ContractionViolationError : std::domain_error {
  using std::domain_error::domain_error;
};

/// Unknown gate name requested from the catalog.
struct CatalogError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// A persisted file violates a declared invariant; the message names it.
struct LoadError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Not enough data points for a well-posed fit.
struct InsufficientDataError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace loqc
