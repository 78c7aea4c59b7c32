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

#include "ghzclock/error.hpp"

namespace ghzclock {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::Ok: return "ok";
    case ErrorCode::Internal: return "internal";
    case ErrorCode::Usage: return "usage";
    case ErrorCode::ConfigSyntax: return "config_syntax";
    case ErrorCode::ConfigUnknownKey: return "config_unknown_key";
    case ErrorCode::ConfigRange: return "config_range";
    case ErrorCode::InvalidProtocolSize: return "invalid_protocol_size";
    case ErrorCode::InfeasibleTransport: return "infeasible_transport";
    case ErrorCode::UndefinedFeasibility: return "undefined_feasibility";
    case ErrorCode::Untrapped: return "untrapped";
    case ErrorCode::Capacity: return "capacity";
    case ErrorCode::InvalidArgument: return "invalid_argument";
    case ErrorCode::NonUnitary: return "non_unitary";
    case ErrorCode::NoInteraction: return "no_interaction";
    case ErrorCode::UndefinedSensitivity: return "undefined_sensitivity";
    case ErrorCode::Io: return "io";
    }
    return "unknown";
}

} // namespace ghzclock
