// Copyright 2026 The blockade-lab Authors
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

#ifndef BLOCKADE_ERRORS_HPP
#define BLOCKADE_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace blockade {

/// Root of every exception thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Parameters sit on a singular point of a closed form (e.g. a 1/chi pole).
class DegenerateParameter : public InvalidArgument {
 public:
  using InvalidArgument::InvalidArgument;
};

/// Composite dimension exceeds the configured cap.
class CapacityError : public Error {
 public:
  using Error::Error;
};

class NumericalError : public Error {
 public:
  using Error::Error;
};

class SingularityError : public NumericalError {
 public:
  SingularityError(const std::string& what, double condition_estimate)
      : NumericalError(what), condition_estimate_(condition_estimate) {}
  double condition_estimate() const { return condition_estimate_; }

 private:
  double condition_estimate_;
};

/// Steady state is not unique.
class DegeneracyError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// Weak-drive amplitudes evaluated on a resonance (M or N vanishes).
class PoleError : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

/// g2 requested where the one-photon population vanishes.
class UndefinedCorrelation : public NumericalError {
 public:
  using NumericalError::NumericalError;
};

class InstabilityError : public NumericalError {
 public:
  InstabilityError(const std::string& what, double time)
      : NumericalError(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

/// Configuration rejected; `path` names the offending field.
class ConfigError : public Error {
 public:
  ConfigError(const std::string& path, const std::string& what)
      : Error(path.empty() ? what : path + ": " + what), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace blockade

#endif  // BLOCKADE_ERRORS_HPP
