/* Copyright 2026 The LesionKit Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/
#ifndef LESIONKIT_CORE_ERROR_HPP_
#define LESIONKIT_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace lesionkit {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Malformed input text (CSV rows, config lines). Messages name the offending line.
struct ParseError : Error {
  using Error::Error;
};

/// Structurally valid input that violates a documented invariant.
struct ValidationError : Error {
  using Error::Error;
};

/// Filesystem or codec failure. Messages name the file.
struct IoError : Error {
  using Error::Error;
};

/// Bad experiment configuration (unknown keys, missing fields).
struct ConfigError : Error {
  using Error::Error;
};

/// Training-time failure (non-finite loss and similar).
struct TrainingError : Error {
  using Error::Error;
};

}  // namespace lesionkit

#endif  // LESIONKIT_CORE_ERROR_HPP_
