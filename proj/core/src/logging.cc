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

#include "riso/logging.h"

#include <cstdlib>
#include <string>

#include "spdlog/spdlog.h"

namespace riso {

std::string_view InitLoggingFromEnv() {
  spdlog::level::level_enum level = spdlog::level::warn;
  if (const char* env = std::getenv(kLogLevelEnv); env != nullptr) {
    const spdlog::level::level_enum parsed = spdlog::level::from_str(env);
    // from_str maps unknown names to "off"; only accept "off" when asked.
    if (parsed != spdlog::level::off || std::string(env) == "off") {
      level = parsed;
    }
  }
  spdlog::set_level(level);
  const auto name = spdlog::level::to_string_view(level);
  return std::string_view(name.data(), name.size());
}

}  // namespace riso
