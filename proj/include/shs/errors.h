// Copyright 2026 The SHS Toolkit Authors
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

#ifndef SHS_ERRORS_H_
#define SHS_ERRORS_H_

#include <stdexcept>
#include <string>

namespace shs {

// Malformed or inconsistent input data (files, graphs, label sets).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A NaN or infinity escaped into a computation that must stay finite.
class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Precondition violations on caller-supplied arguments raise
// std::invalid_argument.

}  // namespace shs

#endif  // SHS_ERRORS_H_
