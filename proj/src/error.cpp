// Copyright 2026 The vowelprint Authors
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

#include "vowelprint/error.hpp"

namespace vowelprint {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMalformedWav: return "malformed wav";
    case ErrorCode::kUnsupportedEncoding: return "unsupported encoding";
    case ErrorCode::kEmptyAudio: return "empty audio";
    case ErrorCode::kInvalidAudio: return "invalid audio";
    case ErrorCode::kInvalidConfig: return "invalid config";
    case ErrorCode::kBufferTooShort: return "buffer too short";
    case ErrorCode::kBandNotCovered: return "band not covered";
    case ErrorCode::kUnvoiced: return "unvoiced";
    case ErrorCode::kHarmonicAboveNyquist: return "harmonic above nyquist";
    case ErrorCode::kLengthMismatch: return "length mismatch";
    case ErrorCode::kUnvoicedFrame: return "unvoiced frame";
    case ErrorCode::kNoVoicedFrames: return "no voiced frames";
    case ErrorCode::kTrendUnavailable: return "trend unavailable";
    case ErrorCode::kUnknownSound: return "unknown sound";
    case ErrorCode::kUnknownVowel: return "unknown vowel";
    case ErrorCode::kInvalidSpec: return "invalid spec";
    case ErrorCode::kIoFailure: return "io failure";
    case ErrorCode::kMalformedTable: return "malformed table";
  }
  return "error";
}

Error::Error(ErrorCode code, const std::string& detail)
    : std::runtime_error(std::string(error_name(code)) +
                         (detail.empty() ? "" : ": " + detail)),
      code_(code) {}

}  // namespace vowelprint
