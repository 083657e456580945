// Copyright 2026 The imdecide Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <stdexcept>
#include <string>

namespace imdecide {

// Base of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An argument lies outside the mathematical domain of the operation
// (non-finite input, probability outside (0,1), count outside [0,n], ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

// Malformed parameters for a constructor or factory.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

// The model does not have the structure the operation requires, e.g. a
// contour requested for a multimodal or discrete auxiliary law.
class UnsupportedModelError : public Error {
 public:
  using Error::Error;
};

// An upper or ordinary expectation diverges.
class NonPrevisibleError : public Error {
 public:
  using Error::Error;
};

// A request for zero items (samples, grid points, replications).
class EmptyRequestError : public Error {
 public:
  using Error::Error;
};

}  // namespace imdecide
