// Copyright 2026 The Simmap Authors. All Rights Reserved.
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

#ifndef SIMMAP_ERRORS_HPP
#define SIMMAP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace simmap {

/// Invalid configuration (bad flags, out-of-range options). CLI exit code 1.
struct config_error : std::runtime_error {
  explicit config_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Invalid or inconsistent input data (parse failures, violated
/// preconditions on matrices, unknown ids). CLI exit code 2.
struct data_error : std::runtime_error {
  explicit data_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure during optimization (non-finite values, degenerate
/// configurations). CLI exit code 3.
struct numeric_error : std::runtime_error {
  explicit numeric_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace simmap

#endif  // SIMMAP_ERRORS_HPP
