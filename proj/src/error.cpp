// Copyright 2026 The maskforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//    http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "maskforge/error.hpp"

namespace maskforge {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::MalformedHeader: return "MalformedHeader";
    case ErrorCode::UnsupportedMaxval: return "UnsupportedMaxval";
    case ErrorCode::TruncatedData: return "TruncatedData";
    case ErrorCode::KernelTooLarge: return "KernelTooLarge";
    case ErrorCode::EvenKernel: return "EvenKernel";
    case ErrorCode::EvenLength: return "EvenLength";
    case ErrorCode::ImageTooSmall: return "ImageTooSmall";
    case ErrorCode::NoForeground: return "NoForeground";
    case ErrorCode::NoOverlapFound: return "NoOverlapFound";
    case ErrorCode::BridgeFailed: return "BridgeFailed";
    case ErrorCode::TooFewRegions: return "TooFewRegions";
    case ErrorCode::InsufficientOverlap: return "InsufficientOverlap";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace maskforge
