// Copyright 2026 The specinvert Authors.
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

#include "specinvert/errors.hpp"

namespace specinvert {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kNonFinite: return "non-finite value";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kBadMagic: return "bad magic";
    case ErrorCode::kVersionMismatch: return "version mismatch";
    case ErrorCode::kTruncated: return "truncated file";
    case ErrorCode::kUnknownTensor: return "unknown tensor";
    case ErrorCode::kMissingTensor: return "missing tensor";
    case ErrorCode::kShapeMismatch: return "shape mismatch";
    case ErrorCode::kUnsupportedEncoding: return "unsupported encoding";
    case ErrorCode::kWrongChannelCount: return "wrong channel count";
    case ErrorCode::kWrongSampleRate: return "wrong sample rate";
  }
  return "unknown error";
}

void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace specinvert
