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

// Session protocol messages. One JSON object per line, tagged by "type".
// docs/protocol.md is the reference for field names and units.

#ifndef RISO_WIRE_H_
#define RISO_WIRE_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

#include "absl/status/statusor.h"
#include "riso/control.h"
#include "riso/world.h"

namespace riso {

inline constexpr int kDefaultPort = 8901;

// Client -> server.
struct HelloMsg {
  std::string scenario;
  ControllerKind controller = ControllerKind::kHuman;
  std::optional<std::uint64_t> seed;
  std::optional<ObjectId> target;
};

struct HumanActionMsg {
  Vec3 v;
  std::optional<GraspCommand> grasp_cmd;
};

struct ResetMsg {
  std::uint64_t seed = 0;
};

using ClientMessage = std::variant<HelloMsg, HumanActionMsg, ResetMsg>;

// Error codes carried by the "error" frame.
inline constexpr char kErrBadJson[] = "bad_json";
inline constexpr char kErrBadMessage[] = "bad_message";
inline constexpr char kErrBadScenario[] = "bad_scenario";
inline constexpr char kErrNoSession[] = "no_session";

struct WireError {
  std::string code;
  std::string detail;
};

// Parses one line. Failures come back as a WireError ready to send.
std::variant<ClientMessage, WireError> ParseClientMessage(
    std::string_view line);

std::string EncodeClientMessage(const ClientMessage& message);

// Server -> client. Each returned string is one line without the newline.
std::string EncodeStateFrame(const WorldState& world);
std::string EncodeBeliefFrame(const WorldState& world, const Belief& belief);

struct EpisodeSummary {
  std::optional<ObjectId> target;
  EpisodeStatus status = EpisodeStatus::kRunning;
  EpisodeResult result;
};

std::string_view ToString(EpisodeStatus status);
std::string EncodeEpisodeEnd(const EpisodeSummary& summary);
std::string EncodeError(const WireError& error);

}  // namespace riso

#endif  // RISO_WIRE_H_
