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

#include "riso/session.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "absl_compat.h"

namespace riso {
namespace {

EpisodeResult ResultWithoutTarget(const EpisodeLog& log) {
  EpisodeResult r;
  r.wall_steps = static_cast<std::int64_t>(log.human_input.size());
  r.human_input_steps =
      std::count(log.human_input.begin(), log.human_input.end(), true);
  for (std::size_t i = 1; i < log.poses.size(); ++i) {
    r.trajectory_length += Norm(log.poses[i] - log.poses[i - 1]);
  }
  return r;
}

}  // namespace

absl::StatusOr<Scenario> ResolveBundledScenario(std::string_view name) {
  const bool plain =
      !name.empty() && std::all_of(name.begin(), name.end(), [](char c) {
        return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
               (c >= '0' && c <= '9') || c == '_' || c == '-';
      });
  if (!plain) {
    return absl::InvalidArgumentError(
        absl::StrCat("scenario must be a bundled name, got '", ToAbsl(name),
                     "'"));
  }
  return ResolveScenario(name);
}

Session::Session(SessionOptions options) : options_(std::move(options)) {
  if (!options_.resolve) options_.resolve = ResolveBundledScenario;
}

absl::Status Session::Restart(std::uint64_t seed) {
  absl::StatusOr<WorldState> world = MakeWorld(scenario_, seed);
  if (!world.ok()) return world.status();
  seed_ = seed;
  world_ = *std::move(world);
  SharedAutonomyParams params;
  params.model = options_.model;
  shared_ = SharedAutonomy(params);
  log_.Start(*world_);
  target_ = hello_.target;
  latest_.reset();
  ended_ = false;
  summary_.reset();
  return absl::OkStatus();
}

std::vector<std::string> Session::OnLine(std::string_view line) {
  std::vector<std::string> out;
  std::variant<ClientMessage, WireError> parsed = ParseClientMessage(line);
  if (const WireError* err = std::get_if<WireError>(&parsed)) {
    out.push_back(EncodeError(*err));
    return out;
  }
  OnMessage(std::get<ClientMessage>(parsed), out);
  return out;
}

void Session::OnMessage(const ClientMessage& message,
                        std::vector<std::string>& out) {
  if (const auto* hello = std::get_if<HelloMsg>(&message)) {
    absl::StatusOr<Scenario> scenario = options_.resolve(hello->scenario);
    if (!scenario.ok()) {
      out.push_back(EncodeError(
          {kErrBadScenario, std::string(scenario.status().message())}));
      return;
    }
    if (hello->target) {
      const bool known = std::any_of(
          scenario->objects.begin(), scenario->objects.end(),
          [&](const ScenarioObject& o) { return o.id == *hello->target; });
      if (!known) {
        out.push_back(EncodeError(
            {kErrBadScenario,
             absl::StrCat("no object '", *hello->target, "' in scenario")}));
        return;
      }
    }
    hello_ = *hello;
    scenario_ = *std::move(scenario);
    if (absl::Status s = Restart(hello->seed.value_or(options_.default_seed));
        !s.ok()) {
      world_.reset();
      out.push_back(
          EncodeError({kErrBadScenario, std::string(s.message())}));
    }
    return;
  }
  if (!world_) {
    out.push_back(EncodeError({kErrNoSession, "send hello first"}));
    return;
  }
  if (const auto* reset = std::get_if<ResetMsg>(&message)) {
    if (absl::Status s = Restart(reset->seed); !s.ok()) {
      out.push_back(
          EncodeError({kErrBadScenario, std::string(s.message())}));
    }
    return;
  }
  // Last writer wins within a tick.
  latest_ = std::get<HumanActionMsg>(message);
}

std::vector<std::string> Session::Tick() {
  std::vector<std::string> out;
  if (!running()) return out;
  summary_.reset();
  ActionTwist a_h;
  if (latest_) a_h = ActionTwist{latest_->v, latest_->grasp_cmd};
  latest_.reset();

  ActionTwist command;
  switch (hello_.controller) {
    case ControllerKind::kHuman:
      command = a_h;
      break;
    case ControllerKind::kShared:
      command = shared_.Act(*world_, a_h);
      break;
    case ControllerKind::kAutonomous:
      if (hello_.target) {
        const WorldObject* t = world_->Find(*hello_.target);
        GraspIntent intent{t->id, AutonomousGraspType(*t)};
        if (intent.grasp.UsesPad() && world_->gripper.n_pads() == 0) {
          intent.grasp = GraspType::Rigid();
        }
        command = AutonomousPolicy(*world_, intent);
      } else {
        command = AutonomousPolicy(*world_);
      }
      break;
  }
  world_ = Step(*world_, command);
  log_.Record(*world_, a_h);
  if (!target_) {
    for (const WorldObject& o : world_->objects) {
      if (o.status == ObjectStatus::kHeld) {
        target_ = o.id;
        break;
      }
    }
  }

  out.push_back(EncodeStateFrame(*world_));
  if (hello_.controller == ControllerKind::kShared) {
    out.push_back(EncodeBeliefFrame(*world_, shared_.belief()));
  }

  EpisodeStatus status = EpisodeStatus::kRunning;
  if (target_) {
    status = CheckEpisode(*world_, *target_);
  } else if (world_->step >= kTimeoutSteps) {
    status = EpisodeStatus::kTimeout;
  }
  if (status != EpisodeStatus::kRunning) {
    EpisodeSummary summary;
    summary.target = target_;
    summary.status = status;
    if (target_) {
      absl::StatusOr<EpisodeResult> r =
          ComputeEpisodeResult(*world_, log_, *target_);
      if (r.ok()) summary.result = *r;
    } else {
      summary.result = ResultWithoutTarget(log_);
    }
    out.push_back(EncodeEpisodeEnd(summary));
    summary_ = std::move(summary);
    ended_ = true;
  }
  return out;
}

}  // namespace riso
