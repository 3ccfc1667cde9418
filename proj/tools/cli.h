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

#ifndef SCORING_BIAS_TOOLS_CLI_H_
#define SCORING_BIAS_TOOLS_CLI_H_

#include <ostream>
#include <string>
#include <vector>

#include "scoring_bias/error.h"

namespace scoring_bias::cli {

enum ExitCode : int {
  kExitOk = 0,
  // Bad input, config, schema or parameter domain; also bad usage.
  kExitInput = 2,
  // A class is missing or the two files disagree on classes.
  kExitClass = 3,
  kExitTooLarge = 4,
};

int ExitCodeFor(ErrorCode code);

// Runs the `scoring-bias` command line. `args` excludes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out,
           std::ostream& err);

}  // namespace scoring_bias::cli

#endif  // SCORING_BIAS_TOOLS_CLI_H_
