// Copyright 2026 The kfpq Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#include "common.hpp"

namespace kfpq {

const char *error_name(ErrorCode c) noexcept {
    switch (c) {
    case ErrorCode::Ok: return "Ok";
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::SingularBiquaternion: return "SingularBiquaternion";
    case ErrorCode::NonSymmetricInput: return "NonSymmetricInput";
    case ErrorCode::NonRealDelta0: return "NonRealDelta0";
    case ErrorCode::DegenerateEigenbasis: return "DegenerateEigenbasis";
    case ErrorCode::QuadratureNotConverged: return "QuadratureNotConverged";
    case ErrorCode::GridUnderResolved: return "GridUnderResolved";
    case ErrorCode::ExpNotConverged: return "ExpNotConverged";
    case ErrorCode::PowerIterationStalled: return "PowerIterationStalled";
    case ErrorCode::TruncationNotConverged: return "TruncationNotConverged";
    case ErrorCode::IndefinitePencil: return "IndefinitePencil";
    case ErrorCode::UnknownLabel: return "UnknownLabel";
    case ErrorCode::Config: return "Config";
    }
    return "Unknown";
}

} // namespace kfpq
