/*
 * Copyright 2026 the fspc authors
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

namespace fspc {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input file or header does not have the required shape.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Input values violate an operation's contract (unknown ids, empty
/// collections, out-of-range parameters).
class DataError : public Error {
 public:
  using Error::Error;
};

/// A configured resource cap was exceeded and truncation was not opted into.
class ResourceLimitError : public Error {
 public:
  using Error::Error;
};

}  // namespace fspc
