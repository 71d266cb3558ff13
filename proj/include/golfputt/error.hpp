/*
 Copyright 2026 The golfputt Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/

#pragma once

#include <stdexcept>
#include <string>

namespace golfputt {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid user-supplied configuration or input data. The message names the
/// offending field or file.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// A numerical procedure produced a non-finite value or failed to converge.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace golfputt
