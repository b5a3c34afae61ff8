// Copyright 2026 The RISO Sim Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef RISO_LOGGING_H_
#define RISO_LOGGING_H_

#include <string_view>

namespace riso {

inline constexpr char kLogLevelEnv[] = "RISO_SIM_LOG";

// Sets the global log level from RISO_SIM_LOG (trace, debug, info, warn,
// error, critical, off). Unset or unrecognised values leave "warn".
// Returns the level name in effect.
std::string_view InitLoggingFromEnv();

}  // namespace riso

#endif  // RISO_LOGGING_H_
