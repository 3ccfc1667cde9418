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

#include "scoring_bias/error.h"

namespace scoring_bias {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptySample:
      return "EmptySample";
    case ErrorCode::kNonFiniteScore:
      return "NonFiniteScore";
    case ErrorCode::kIndexOutOfRange:
      return "IndexOutOfRange";
    case ErrorCode::kMissingClass:
      return "MissingClass";
    case ErrorCode::kDomainError:
      return "DomainError";
    case ErrorCode::kTooLarge:
      return "TooLarge";
    case ErrorCode::kConfigError:
      return "ConfigError";
    case ErrorCode::kClassMismatch:
      return "ClassMismatch";
    case ErrorCode::kSchemaError:
      return "SchemaError";
  }
  return "Unknown";
}

void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, std::string(ErrorCodeName(code)) + ": " + message);
}

}  // namespace scoring_bias
