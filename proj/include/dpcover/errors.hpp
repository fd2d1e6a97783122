/*
   Copyright 2026 The dpcover Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef DPCOVER_ERRORS_HPP
#define DPCOVER_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dpcover {

// Bad parameters from the caller (wrong field order, q = 3 mod 4, ...).
class InvalidArgument : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Arithmetic that has no value: division by zero, inverse of a singular matrix.
class MathError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

// An enumeration or dense computation would exceed the configured cap.
class ResourceCap : public std::runtime_error {
public:
    ResourceCap(const std::string& what, std::uint64_t predicted)
        : std::runtime_error(what), predicted_(predicted) {}
    std::uint64_t predicted() const noexcept { return predicted_; }

private:
    std::uint64_t predicted_;
};

// A computed object failed a structural verification. Indicates a bug
// (or a deliberately corrupted input in tests).
class VerificationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace dpcover

#endif
