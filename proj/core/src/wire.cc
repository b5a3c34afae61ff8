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

#include "riso/wire.h"

#include <cmath>

#include "json.hpp"

namespace riso {
namespace {

using nlohmann::json;
using nlohmann::ordered_json;

ordered_json ToJson(const Vec3& v) { return ordered_json::array({v.x, v.y, v.z}); }

WireError BadMessage(std::string detail) {
  return WireError{kErrBadMessage, std::move(detail)};
}

std::optional<double> FiniteNumber(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_number()) return std::nullopt;
  const double v = j[key].get<double>();
  if (!std::isfinite(v)) return std::nullopt;
  return v;
}

std::optional<std::uint64_t> Seed(const json& j) {
  if (!j.contains("seed") || !j["seed"].is_number_unsigned()) {
    return std::nullopt;
  }
  return j["seed"].get<std::uint64_t>();
}

}  // namespace

std::variant<ClientMessage, WireError> ParseClientMessage(
    std::string_view line) {
  const json j = json::parse(line, nullptr, /*allow_exceptions=*/false);
  if (j.is_discarded()) return WireError{kErrBadJson, "not valid JSON"};
  if (!j.is_object() || !j.contains("type") || !j["type"].is_string()) {
    return BadMessage("expected an object with a string \"type\"");
  }
  const std::string type = j["type"].get<std::string>();

  if (type == "hello") {
    HelloMsg hello;
    if (!j.contains("scenario") || !j["scenario"].is_string()) {
      return BadMessage("hello.scenario: must be a string");
    }
    hello.scenario = j["scenario"].get<std::string>();
    if (!j.contains("controller") || !j["controller"].is_string()) {
      return BadMessage("hello.controller: must be a string");
    }
    const std::optional<ControllerKind> kind =
        ParseControllerKind(j["controller"].get<std::string>());
    if (!kind) {
      return BadMessage("hello.controller: expected human, shared or "
                        "autonomous");
    }
    hello.controller = *kind;
    if (j.contains("seed")) {
      hello.seed = Seed(j);
      if (!hello.seed) return BadMessage("hello.seed: must be an integer >= 0");
    }
    if (j.contains("target") && !j["target"].is_null()) {
      if (!j["target"].is_string()) {
        return BadMessage("hello.target: must be a string");
      }
      hello.target = j["target"].get<std::string>();
    }
    return ClientMessage{std::move(hello)};
  }

  if (type == "human_action") {
    HumanActionMsg action;
    const std::optional<double> vx = FiniteNumber(j, "vx");
    const std::optional<double> vy = FiniteNumber(j, "vy");
    const std::optional<double> vz = FiniteNumber(j, "vz");
    if (!vx || !vy || !vz) {
      return BadMessage("human_action: vx, vy, vz must be finite numbers");
    }
    action.v = {*vx, *vy, *vz};
    if (j.contains("grasp_cmd") && !j["grasp_cmd"].is_null()) {
      if (!j["grasp_cmd"].is_string()) {
        return BadMessage("human_action.grasp_cmd: must be a string");
      }
      action.grasp_cmd = ParseGraspCommand(j["grasp_cmd"].get<std::string>());
      if (!action.grasp_cmd) {
        return BadMessage("human_action.grasp_cmd: unknown command");
      }
    }
    return ClientMessage{action};
  }

  if (type == "reset") {
    const std::optional<std::uint64_t> seed = Seed(j);
    if (!seed) return BadMessage("reset.seed: must be an integer >= 0");
    return ClientMessage{ResetMsg{*seed}};
  }

  return BadMessage("unknown message type '" + type + "'");
}

std::string EncodeClientMessage(const ClientMessage& message) {
  ordered_json j;
  if (const auto* hello = std::get_if<HelloMsg>(&message)) {
    j["type"] = "hello";
    j["scenario"] = hello->scenario;
    j["controller"] = std::string(ToString(hello->controller));
    if (hello->seed) j["seed"] = *hello->seed;
    if (hello->target) j["target"] = *hello->target;
  } else if (const auto* act = std::get_if<HumanActionMsg>(&message)) {
    j["type"] = "human_action";
    j["vx"] = act->v.x;
    j["vy"] = act->v.y;
    j["vz"] = act->v.z;
    if (act->grasp_cmd) j["grasp_cmd"] = std::string(ToString(*act->grasp_cmd));
  } else {
    j["type"] = "reset";
    j["seed"] = std::get<ResetMsg>(message).seed;
  }
  return j.dump();
}

std::string EncodeStateFrame(const WorldState& world) {
  const GripperState& g = world.gripper;
  ordered_json j;
  j["type"] = "state_frame";
  j["tick"] = world.step;
  j["time"] = world.time;
  j["ee_pose"] = ToJson(world.ee_pose());
  ordered_json pads = ordered_json::array();
  for (const Pad& p : g.pads) {
    ordered_json pad;
    pad["pressure"] = std::string(ToString(p.pressure));
    pad["pending"] = p.pending ? ordered_json(std::string(
                                     ToString(p.pending->target)))
                               : ordered_json(nullptr);
    pad["offset"] = ToJson(p.offset);
    pads.push_back(std::move(pad));
  }
  j["gripper"] = {{"aperture", g.aperture},
                  {"max_aperture", g.max_aperture},
                  {"pads", std::move(pads)}};
  ordered_json objects = ordered_json::array();
  for (const WorldObject& o : world.objects) {
    objects.push_back({{"id", o.id},
                       {"position", ToJson(o.position)},
                       {"status", std::string(ToString(o.status))},
                       {"mass_kg", o.surface.mass},
                       {"height_m", o.surface.height},
                       {"contact_radius_m", o.surface.contact_radius}});
  }
  j["objects"] = std::move(objects);
  ordered_json held = ordered_json::array();
  for (const HeldBinding& b : g.held) {
    held.push_back({{"object_id", b.object_id},
                    {"grasp", ToString(b.grasp)},
                    {"capacity_n", b.capacity}});
  }
  j["held"] = std::move(held);
  j["bin"] = {{"min", ToJson(world.bin.min)}, {"max", ToJson(world.bin.max)}};
  return j.dump();
}

std::string EncodeBeliefFrame(const WorldState& world, const Belief& belief) {
  ordered_json j;
  j["type"] = "belief_frame";
  j["tick"] = world.step;
  ordered_json entries = ordered_json::array();
  for (const BeliefEntry& e : belief.entries) {
    entries.push_back(
        {{"object_id", e.object_id}, {"grasp", ToString(e.grasp)}, {"p", e.p}});
  }
  j["entries"] = std::move(entries);
  return j.dump();
}

std::string_view ToString(EpisodeStatus status) {
  switch (status) {
    case EpisodeStatus::kRunning:
      return "running";
    case EpisodeStatus::kSuccess:
      return "success";
    case EpisodeStatus::kTargetDropped:
      return "target_dropped";
    case EpisodeStatus::kTimeout:
      return "timeout";
  }
  return "unknown";
}

std::string EncodeEpisodeEnd(const EpisodeSummary& summary) {
  const EpisodeResult& r = summary.result;
  ordered_json j;
  j["type"] = "episode_end";
  j["result"] = {
      {"status", std::string(ToString(summary.status))},
      {"target", summary.target ? ordered_json(*summary.target)
                                : ordered_json(nullptr)},
      {"success", r.success},
      {"human_input_steps", r.human_input_steps},
      {"trajectory_length_m", r.trajectory_length},
      {"wall_steps", r.wall_steps},
      {"grasp_type_used", r.grasp_type_used
                              ? ordered_json(ToString(*r.grasp_type_used))
                              : ordered_json(nullptr)}};
  return j.dump();
}

std::string EncodeError(const WireError& error) {
  ordered_json j;
  j["type"] = "error";
  j["code"] = error.code;
  j["detail"] = error.detail;
  return j.dump();
}

}  // namespace riso
