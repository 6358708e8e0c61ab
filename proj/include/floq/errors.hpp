// Copyright 2026 The floqlab Authors
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

namespace floq {

/** Base class for every error raised by the library. */
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/** A parameter lies outside the domain where the operation is defined. */
class DomainError : public Error {
 public:
  using Error::Error;
};

/** Site index or similar lookup out of range. */
class IndexError : public Error {
 public:
  using Error::Error;
};

/** A size cap (dense dimension, term count) would be exceeded. */
class ResourceError : public Error {
 public:
  using Error::Error;
};

/** An iterative numerical method failed to reach its tolerance. */
class AccuracyError : public Error {
 public:
  explicit AccuracyError(const std::string& what, double estimate = 0.0)
      : Error(what), estimate_(estimate) {}
  double estimate() const { return estimate_; }

 private:
  double estimate_;
};

}  // namespace floq
