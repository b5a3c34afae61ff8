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

// Transport-free teleoperation session: consumes client lines, produces
// server lines. The network server owns one Session per connection and calls
// Tick() at 20 Hz; tests drive it directly.

#ifndef RISO_SESSION_H_
#define RISO_SESSION_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "riso/control.h"
#include "riso/scenario.h"
#include "riso/wire.h"

namespace riso {

struct SessionOptions {
  // Maps a hello's scenario field to a scenario. Defaults to bundled
  // scenarios only (no file paths).
  std::function<absl::StatusOr<Scenario>(std::string_view)> resolve;
  std::uint64_t default_seed = 0;  // used when hello carries no seed
  RationalityModel model;
};

// Bundled scenario lookup that rejects anything that looks like a path.
absl::StatusOr<Scenario> ResolveBundledScenario(std::string_view name);

class Session {
 public:
  explicit Session(SessionOptions options = {});

  // Handles one client line; returns lines to send immediately (errors).
  std::vector<std::string> OnLine(std::string_view line);
  void OnMessage(const ClientMessage& message, std::vector<std::string>& out);

  // A hello has been accepted and the episode has not ended.
  bool running() const { return world_.has_value() && !ended_; }

  // Advances one tick with the latest human action received since the
  // previous tick (zero if none). Emits a state frame, a belief frame under
  // the shared controller and an episode_end frame when the episode ends.
  std::vector<std::string> Tick();

  // Summary of the episode that just ended, if any.
  const std::optional<EpisodeSummary>& ended_episode() const {
    return summary_;
  }

  const std::optional<WorldState>& world() const { return world_; }
  const Belief& belief() const { return shared_.belief(); }
  ControllerKind controller() const { return hello_.controller; }
  const std::string& scenario_name() const { return hello_.scenario; }
  std::uint64_t seed() const { return seed_; }

 private:
  absl::Status Restart(std::uint64_t seed);

  SessionOptions options_;
  HelloMsg hello_;
  Scenario scenario_;
  std::uint64_t seed_ = 0;
  std::optional<WorldState> world_;
  SharedAutonomy shared_;
  EpisodeLog log_;
  std::optional<ObjectId> target_;
  std::optional<HumanActionMsg> latest_;
  bool ended_ = false;
  std::optional<EpisodeSummary> summary_;
};

}  // namespace riso

#endif  // RISO_SESSION_H_
