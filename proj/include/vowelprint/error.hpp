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

#ifndef VOWELPRINT_ERROR_HPP_
#define VOWELPRINT_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace vowelprint {

enum class ErrorCode {
  kMalformedWav,
  kUnsupportedEncoding,
  kEmptyAudio,
  kInvalidAudio,
  kInvalidConfig,
  kBufferTooShort,
  kBandNotCovered,
  kUnvoiced,
  kHarmonicAboveNyquist,
  kLengthMismatch,
  kUnvoicedFrame,
  kNoVoicedFrames,
  kTrendUnavailable,
  kUnknownSound,
  kUnknownVowel,
  kInvalidSpec,
  kIoFailure,
  kMalformedTable,
};

// Short lowercase name, e.g. "malformed wav". Used as the CLI diagnostic.
std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace vowelprint

#endif  // VOWELPRINT_ERROR_HPP_
