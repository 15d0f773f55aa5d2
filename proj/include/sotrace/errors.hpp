/*
 * Copyright 2026 The sotrace Authors
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

namespace sotrace {

/// Shape or size of an argument does not fit the operation.
class dimension_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Mixing exact and floating values at a runtime boundary (JSON, CLI).
class backend_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A documented precondition on the mathematical input does not hold.
class precondition_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class singular_matrix_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A loaded object failed its group-membership checks.
class validation_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid run configuration; the message names the violated constraint.
class config_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace sotrace
