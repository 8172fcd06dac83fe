// Copyright 2026 The Photonloss Authors
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

namespace photonloss {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A layout would exceed the configured amplitude cap.
class DimensionCapError : public Error {
 public:
  using Error::Error;
};

/// Bad argument: wrong shape, out-of-range occupation, invalid mode, etc.
class InvalidArgumentError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a layout do not.
class LayoutMismatchError : public Error {
 public:
  using Error::Error;
};

/// A branch has zero norm, e.g. a photon lost from the vacuum.
class ImpossibleEventError : public Error {
 public:
  using Error::Error;
};

/// The Fock truncation is too small for the requested squeezing or gate.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// Recovery requested where none is defined (ancilla loss under ECS).
class UnsupportedRecoveryError : public Error {
 public:
  using Error::Error;
};

/// Malformed configuration document. `field()` names the offending entry.
class ValidationError : public Error {
 public:
  ValidationError(std::string field, const std::string& message)
      : Error(field + ": " + message), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

}  // namespace photonloss
