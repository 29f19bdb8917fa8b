/*
 * Copyright 2026 The ringsim Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

#include <stdexcept>
#include <string>

namespace ringsim {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An argument lies outside the physical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Beam-splitter chain whose per-splitter reflectivity Gamma*L/N exceeds one.
class ReflectivityRangeError : public DomainError {
 public:
  using DomainError::DomainError;
};

/// A geometric series was evaluated outside its disk of convergence.
class DivergenceError : public Error {
 public:
  using Error::Error;
};

/// A resonant denominator vanished (lossless, perfectly transmitting point).
class ResonantDivergenceError : public Error {
 public:
  using Error::Error;
};

/// The requested accuracy needs more series terms than the configured cap.
class TruncationError : public Error {
 public:
  using Error::Error;
};

/// A transfer matrix is not a contraction (output power exceeds input).
class UnitarityViolation : public Error {
 public:
  using Error::Error;
};

class SingularMatrixError : public Error {
 public:
  using Error::Error;
};

/// Root finding or a closed form failed numerically.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Sector probabilities or density matrices are mutually inconsistent.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

/// A probability was requested on an empty sector.
class UndefinedProbabilityError : public Error {
 public:
  using Error::Error;
};

class ConfigError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace ringsim
