// Copyright 2026 The bellspace Authors
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

namespace bellspace {

/// Input outside the mathematical domain of an operation (non-Hermitian
/// operator, unnormalized amplitudes, ...).
class DomainError : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

/// A documented precondition of an operation does not hold.
class PreconditionError : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A conditional probability was requested on a zero-probability event.
class ConditionalUndefined : public std::runtime_error {
   public:
    explicit ConditionalUndefined(std::string event)
        : std::runtime_error("conditioning event has zero probability: " + event), event_(std::move(event)) {}

    const std::string &event() const { return event_; }

   private:
    std::string event_;
};

/// Noise inversion or reconstruction requested with a vanishing attenuation factor.
class SingularInversion : public std::domain_error {
   public:
    using std::domain_error::domain_error;
};

}  // namespace bellspace
