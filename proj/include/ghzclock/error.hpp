// Copyright 2026 The ghzclock Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Error codes shared by the library and the command-line tool.
 *
 * Every failure raised by the library is a ghzclock::Error carrying one of
 * these codes. The CLI maps the code one-to-one onto its process exit status,
 * so the numeric values are part of the external interface and must not be
 * renumbered.
 */
#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace ghzclock {

enum class ErrorCode : int {
    Ok = 0,
    Internal = 1,
    Usage = 2,
    ConfigSyntax = 3,
    ConfigUnknownKey = 4,
    ConfigRange = 5,
    InvalidProtocolSize = 6,
    InfeasibleTransport = 7,
    UndefinedFeasibility = 8,
    Untrapped = 9,
    Capacity = 10,
    InvalidArgument = 11,
    NonUnitary = 12,
    NoInteraction = 13,
    UndefinedSensitivity = 14,
    Io = 15,
};

[[nodiscard]] std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
  public:
    Error(ErrorCode code, const std::string &message)
        : std::runtime_error(message), code_(code) {}

    [[nodiscard]] ErrorCode code() const noexcept { return code_; }

  private:
    ErrorCode code_;
};

/// Throws Error(code, message) when `condition` is false.
inline void require(bool condition, ErrorCode code, const std::string &message) {
    if (!condition) {
        throw Error(code, message);
    }
}

} // namespace ghzclock
