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

#include "riso/scenario.h"

#include <algorithm>
#include <fstream>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl_compat.h"

namespace riso {
namespace {

using nlohmann::json;

absl::Status FieldError(std::string_view field, std::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat(ToAbsl(field), ": ", ToAbsl(what)));
}

absl::Status CheckKeys(const json& obj, std::string_view where,
                       std::initializer_list<std::string_view> allowed) {
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      return FieldError(where.empty() ? key : absl::StrCat(ToAbsl(where), ".", key),
                        "unknown field");
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<double> GetNumber(const json& obj, const std::string& key,
                                 std::string_view where) {
  const std::string field = absl::StrCat(ToAbsl(where), ".", key);
  if (!obj.contains(key)) return FieldError(field, "missing");
  if (!obj[key].is_number()) return FieldError(field, "must be a number");
  return obj[key].get<double>();
}

absl::StatusOr<Vec3> GetVec3(const json& obj, const std::string& key,
                             std::string_view where) {
  const std::string field =
      where.empty() ? key : absl::StrCat(ToAbsl(where), ".", key);
  if (!obj.contains(key)) return FieldError(field, "missing");
  const json& v = obj[key];
  if (!v.is_array() || v.size() != 3 ||
      !std::all_of(v.begin(), v.end(),
                   [](const json& e) { return e.is_number(); })) {
    return FieldError(field, "must be an array of 3 numbers");
  }
  return Vec3{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
}

absl::StatusOr<ScenarioObject> ParseObject(const json& o,
                                           const std::string& where) {
  if (!o.is_object()) return FieldError(where, "must be an object");
  if (absl::Status s =
          CheckKeys(o, where,
                    {"id", "position", "mass_kg", "height_m",
                     "contact_radius_m", "curvature_per_m",
                     "roughness_spacing_m", "porosity", "note", "estimated"});
      !s.ok()) {
    return s;
  }
  ScenarioObject out;
  if (!o.contains("id") || !o["id"].is_string() ||
      o["id"].get<std::string>().empty()) {
    return FieldError(absl::StrCat(where, ".id"), "must be a non-empty string");
  }
  out.id = o["id"].get<std::string>();

  absl::StatusOr<Vec3> position = GetVec3(o, "position", where);
  if (!position.ok()) return position.status();
  out.position = *position;

  SurfaceDescriptor& s = out.surface;
  struct NumberField {
    const char* key;
    double* dst;
  };
  for (const NumberField& f : {NumberField{"mass_kg", &s.mass},
                               NumberField{"height_m", &s.height},
                               NumberField{"contact_radius_m",
                                           &s.contact_radius},
                               NumberField{"curvature_per_m", &s.curvature},
                               NumberField{"porosity", &s.porosity}}) {
    absl::StatusOr<double> v = GetNumber(o, f.key, where);
    if (!v.ok()) return v.status();
    *f.dst = *v;
  }
  const std::string roughness_field =
      absl::StrCat(where, ".roughness_spacing_m");
  if (!o.contains("roughness_spacing_m")) {
    return FieldError(roughness_field, "missing");
  }
  const json& r = o["roughness_spacing_m"];
  if (r.is_string() && r.get<std::string>() == "smooth") {
    s.roughness_spacing = kSmooth;
  } else if (r.is_number()) {
    s.roughness_spacing = r.get<double>();
  } else {
    return FieldError(roughness_field, "must be a number or \"smooth\"");
  }

  if (absl::Status v = ValidateSurface(s); !v.ok()) {
    // ValidateSurface messages start with the SurfaceDescriptor field name;
    // map it back to the document key.
    const std::string_view msg = FromAbsl(v.message());
    const std::string_view field = msg.substr(0, msg.find(':'));
    std::string key(field);
    if (field == "contact_radius") key = "contact_radius_m";
    if (field == "curvature") key = "curvature_per_m";
    if (field == "roughness_spacing") key = "roughness_spacing_m";
    if (field == "mass") key = "mass_kg";
    if (field == "height") key = "height_m";
    return FieldError(absl::StrCat(where, ".", key),
                      msg.substr(msg.find(':') + 2));
  }
  return out;
}

}  // namespace

absl::StatusOr<Scenario> ParseScenario(const json& doc) {
  if (!doc.is_object()) return FieldError("$", "document must be an object");
  if (absl::Status s = CheckKeys(doc, "",
                                 {"name", "notes", "objects", "bin", "gripper",
                                  "ee_start", "multi_object_targets"});
      !s.ok()) {
    return s;
  }
  Scenario sc;
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) return FieldError("name", "must be a string");
    sc.name = doc["name"].get<std::string>();
  }

  if (!doc.contains("objects")) return FieldError("objects", "missing");
  if (!doc["objects"].is_array()) {
    return FieldError("objects", "must be an array");
  }
  std::set<std::string> ids;
  for (std::size_t i = 0; i < doc["objects"].size(); ++i) {
    const std::string where = absl::StrCat("objects[", i, "]");
    absl::StatusOr<ScenarioObject> obj = ParseObject(doc["objects"][i], where);
    if (!obj.ok()) return obj.status();
    if (!ids.insert(obj->id).second) {
      return FieldError(absl::StrCat(where, ".id"),
                        absl::StrCat("duplicate object id '", obj->id, "'"));
    }
    sc.objects.push_back(*std::move(obj));
  }

  if (!doc.contains("bin")) return FieldError("bin", "missing");
  const json& bin = doc["bin"];
  if (!bin.is_object()) return FieldError("bin", "must be an object");
  if (absl::Status s = CheckKeys(bin, "bin", {"min", "max"}); !s.ok()) return s;
  absl::StatusOr<Vec3> bmin = GetVec3(bin, "min", "bin");
  if (!bmin.ok()) return bmin.status();
  absl::StatusOr<Vec3> bmax = GetVec3(bin, "max", "bin");
  if (!bmax.ok()) return bmax.status();
  if (!(bmin->x < bmax->x && bmin->y < bmax->y && bmin->z <= bmax->z)) {
    return FieldError("bin", "min must be below max on every axis");
  }
  sc.bin = Box{*bmin, *bmax};

  if (!doc.contains("gripper")) return FieldError("gripper", "missing");
  const json& g = doc["gripper"];
  if (!g.is_object()) return FieldError("gripper", "must be an object");
  if (absl::Status s = CheckKeys(g, "gripper",
                                 {"n_pads", "pinch_force_n", "max_aperture_m",
                                  "pad_offsets_m"});
      !s.ok()) {
    return s;
  }
  if (!g.contains("n_pads") || !g["n_pads"].is_number_integer() ||
      g["n_pads"].get<int>() < 0) {
    return FieldError("gripper.n_pads", "must be an integer >= 0");
  }
  sc.gripper.n_pads = g["n_pads"].get<int>();
  absl::StatusOr<double> pinch = GetNumber(g, "pinch_force_n", "gripper");
  if (!pinch.ok()) return pinch.status();
  if (!(*pinch >= 0.0)) return FieldError("gripper.pinch_force_n", "must be >= 0");
  sc.gripper.pinch_force = *pinch;
  absl::StatusOr<double> aperture = GetNumber(g, "max_aperture_m", "gripper");
  if (!aperture.ok()) return aperture.status();
  if (!(*aperture > 0.0)) {
    return FieldError("gripper.max_aperture_m", "must be > 0");
  }
  sc.gripper.max_aperture = *aperture;
  if (g.contains("pad_offsets_m")) {
    const json& offs = g["pad_offsets_m"];
    if (!offs.is_array() ||
        static_cast<int>(offs.size()) != sc.gripper.n_pads) {
      return FieldError("gripper.pad_offsets_m",
                        "must list one [x, y, z] per pad");
    }
    for (std::size_t i = 0; i < offs.size(); ++i) {
      absl::StatusOr<Vec3> v =
          GetVec3(json{{"o", offs[i]}}, "o", "");
      if (!v.ok()) {
        return FieldError(absl::StrCat("gripper.pad_offsets_m[", i, "]"),
                          "must be an array of 3 numbers");
      }
      sc.gripper.pad_offsets.push_back(*v);
    }
  }

  if (doc.contains("ee_start")) {
    absl::StatusOr<Vec3> start = GetVec3(doc, "ee_start", "");
    if (!start.ok()) return start.status();
    sc.ee_start = *start;
  }
  if (doc.contains("multi_object_targets")) {
    if (!doc["multi_object_targets"].is_boolean()) {
      return FieldError("multi_object_targets", "must be a boolean");
    }
    sc.multi_object_targets = doc["multi_object_targets"].get<bool>();
  }
  return sc;
}

absl::StatusOr<Scenario> LoadScenarioFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(
        absl::StrCat("cannot open scenario file ", path.string()));
  }
  json doc = json::parse(in, nullptr, /*allow_exceptions=*/false);
  if (doc.is_discarded()) {
    return absl::InvalidArgumentError(
        absl::StrCat(path.string(), ": not valid JSON"));
  }
  absl::StatusOr<Scenario> sc = ParseScenario(doc);
  if (!sc.ok()) {
    return absl::Status(sc.status().code(),
                        absl::StrCat(path.string(), ": ", sc.status().message()));
  }
  if (sc->name.empty()) sc->name = path.stem().string();
  return sc;
}

std::filesystem::path BundledScenarioDir() {
  return std::filesystem::path(RISO_DATA_DIR) / "scenarios";
}

absl::StatusOr<Scenario> ResolveScenario(std::string_view name_or_path) {
  const std::filesystem::path p(name_or_path);
  if (p.has_extension() || p.has_parent_path()) return LoadScenarioFile(p);
  return LoadScenarioFile(BundledScenarioDir() / (std::string(name_or_path) +
                                                  ".json"));
}

absl::StatusOr<WorldState> MakeWorld(const Scenario& scenario,
                                     std::uint64_t seed,
                                     std::span<const ObjectId> only) {
  absl::StatusOr<GripperState> gripper =
      MakeGripper(scenario.gripper, scenario.ee_start);
  if (!gripper.ok()) return gripper.status();
  WorldState w;
  w.gripper = *std::move(gripper);
  w.bin = scenario.bin;
  w.rng_seed = seed;
  w.params = DefaultAdhesiveParams();
  w.multi_object_targets = scenario.multi_object_targets;
  for (const ObjectId& id : only) {
    if (std::none_of(scenario.objects.begin(), scenario.objects.end(),
                     [&](const ScenarioObject& o) { return o.id == id; })) {
      return absl::NotFoundError(absl::StrCat("no object '", id, "'"));
    }
  }
  for (const ScenarioObject& o : scenario.objects) {
    if (!only.empty() &&
        std::find(only.begin(), only.end(), o.id) == only.end()) {
      continue;
    }
    w.objects.push_back(WorldObject{o.id, o.position, o.surface,
                                    ObjectStatus::kOnTable, std::nullopt});
  }
  return w;
}

absl::StatusOr<WorldState> LoadScenario(const json& document,
                                        std::uint64_t seed) {
  absl::StatusOr<Scenario> sc = ParseScenario(document);
  if (!sc.ok()) return sc.status();
  return MakeWorld(*sc, seed);
}

}  // namespace riso
