/*
 * Copyright 2026 The Scoring Bias Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef SCORING_BIAS_ERROR_H_
#define SCORING_BIAS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace scoring_bias {

enum class ErrorCode {
  kEmptySample,
  kNonFiniteScore,
  kIndexOutOfRange,
  kMissingClass,
  kDomainError,
  kTooLarge,
  kConfigError,
  kClassMismatch,
  kSchemaError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported through this exception type. The code is
// what callers (and the CLI exit-code mapping) dispatch on.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void Fail(ErrorCode code, const std::string& message);

}  // namespace scoring_bias

#endif  // SCORING_BIAS_ERROR_H_
