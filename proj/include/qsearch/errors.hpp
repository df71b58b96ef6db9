// Copyright 2026 The qsearch Authors
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

namespace qsearch {

/// Malformed sequence text or a sequence whose widths do not fit its context.
class SequenceError : public std::invalid_argument {
 public:
    using std::invalid_argument::invalid_argument;
};

/// The search space is empty, or no candidate has nonzero success probability.
class InfeasibleError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

/// An iterative procedure did not settle within its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
    using std::runtime_error::runtime_error;
};

}  // namespace qsearch
