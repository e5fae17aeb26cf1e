/* Copyright 2026 The silrender Authors.

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

     http://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.*/

#include "silrender/config.h"

#include <cmath>
#include <set>

#include "json.hpp"
#include "silrender/io.h"

namespace silrender {
namespace {

using nlohmann::json;

// Reads fields of one JSON object, tracking which keys were consumed so that
// leftovers can be reported as unknown.
class ObjectReader {
 public:
  ObjectReader(const json& j, std::string path) : j_(j), path_(std::move(path)) {
    if (!j_.is_object()) throw ConfigError(Name(), "expected an object");
  }

  std::string Field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

  const json* Get(const std::string& key) {
    seen_.insert(key);
    auto it = j_.find(key);
    if (it == j_.end() || it->is_null()) return nullptr;
    return &*it;
  }

  void Read(const std::string& key, double& out) {
    if (const json* v = Get(key)) out = Number(*v, Field(key));
  }
  void Read(const std::string& key, std::optional<double>& out) {
    if (const json* v = Get(key)) out = Number(*v, Field(key));
  }
  void Read(const std::string& key, int& out) {
    if (const json* v = Get(key)) out = Integer(*v, Field(key));
  }
  void Read(const std::string& key, std::optional<int>& out) {
    if (const json* v = Get(key)) out = Integer(*v, Field(key));
  }
  void Read(const std::string& key, bool& out) {
    if (const json* v = Get(key)) {
      if (!v->is_boolean()) throw ConfigError(Field(key), "expected a boolean");
      out = v->get<bool>();
    }
  }
  void Read(const std::string& key, std::string& out) {
    if (const json* v = Get(key)) {
      if (!v->is_string()) throw ConfigError(Field(key), "expected a string");
      out = v->get<std::string>();
    }
  }
  void Read(const std::string& key, std::vector<std::string>& out) {
    if (const json* v = Get(key)) {
      if (!v->is_array()) throw ConfigError(Field(key), "expected an array");
      out.clear();
      for (const json& e : *v) {
        if (!e.is_string()) {
          throw ConfigError(Field(key), "expected an array of strings");
        }
        out.push_back(e.get<std::string>());
      }
    }
  }
  void Read(const std::string& key, std::vector<double>& out) {
    if (const json* v = Get(key)) {
      if (!v->is_array()) throw ConfigError(Field(key), "expected an array");
      out.clear();
      for (const json& e : *v) out.push_back(Number(e, Field(key)));
    }
  }
  void Read(const std::string& key, Vec3& out) {
    if (const json* v = Get(key)) out = Vector<3>(*v, Field(key));
  }
  void Read(const std::string& key, std::optional<Vec2>& out) {
    if (const json* v = Get(key)) out = Vector<2>(*v, Field(key));
  }

  void Finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(Field(it.key()), "unknown field");
    }
  }

  std::string Name() const { return path_.empty() ? "<root>" : path_; }

  static double Number(const json& v, const std::string& field) {
    if (!v.is_number()) throw ConfigError(field, "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(field, "must be finite");
    return d;
  }
  static int Integer(const json& v, const std::string& field) {
    if (!v.is_number_integer()) throw ConfigError(field, "expected an integer");
    return v.get<int>();
  }
  template <int N>
  static Eigen::Matrix<double, N, 1> Vector(const json& v,
                                            const std::string& field) {
    if (!v.is_array() || v.size() != N) {
      throw ConfigError(field, "expected " + std::to_string(N) + " numbers");
    }
    Eigen::Matrix<double, N, 1> out;
    for (int i = 0; i < N; ++i) out[i] = Number(v[i], field);
    return out;
  }

 private:
  const json& j_;
  std::string path_;
  std::set<std::string> seen_;
};

ModelKind ParseModelKind(const std::string& s, const std::string& field) {
  if (s == "triangle") return ModelKind::kTriangle;
  if (s == "arm") return ModelKind::kArm;
  if (s == "humanoid") return ModelKind::kHumanoid;
  if (s == "obj") return ModelKind::kObj;
  throw ConfigError(field, "unknown model kind '" + s +
                               "' (triangle, arm, humanoid, obj)");
}

std::string ModelKindName(ModelKind k) {
  switch (k) {
    case ModelKind::kTriangle: return "triangle";
    case ModelKind::kArm: return "arm";
    case ModelKind::kHumanoid: return "humanoid";
    case ModelKind::kObj: return "obj";
  }
  return "";
}

FreeSet ParseFreeSet(const std::string& s, const std::string& field) {
  if (s == "all_joints") return FreeSet::kAllJoints;
  if (s == "perturbed") return FreeSet::kPerturbed;
  if (s == "all") return FreeSet::kAll;
  throw ConfigError(field, "unknown free set '" + s +
                               "' (all_joints, perturbed, all)");
}

std::string FreeSetName(FreeSet f) {
  switch (f) {
    case FreeSet::kAllJoints: return "all_joints";
    case FreeSet::kPerturbed: return "perturbed";
    case FreeSet::kAll: return "all";
  }
  return "";
}

json ToJson(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

}  // namespace

SceneConfig ParseSceneConfig(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text, nullptr, true, /*ignore_comments=*/true);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  SceneConfig c;
  ObjectReader r(root, "");

  if (const json* j = r.Get("model")) {
    ObjectReader m(*j, "model");
    std::string kind;
    m.Read("kind", kind);
    if (!kind.empty()) c.model.kind = ParseModelKind(kind, "model.kind");
    m.Read("obj_path", c.model.obj_path);
    m.Read("segments", c.model.segments);
    m.Read("rings", c.model.rings);
    m.Read("smooth_weights", c.model.smooth_weights);
    m.Finish();
  }
  if (const json* j = r.Get("cameras")) {
    ObjectReader m(*j, "cameras");
    std::string kind;
    m.Read("kind", kind);
    if (kind == "orthographic") {
      c.cameras.kind = CameraKind::kOrthographic;
    } else if (kind == "perspective" || kind.empty()) {
      c.cameras.kind = CameraKind::kPerspective;
    } else {
      throw ConfigError("cameras.kind", "expected orthographic or perspective");
    }
    m.Read("focal", c.cameras.focal);
    m.Read("principal_point", c.cameras.principal_point);
    m.Read("count", c.cameras.count);
    m.Read("radius", c.cameras.radius);
    m.Read("elevation_deg", c.cameras.elevation_deg);
    m.Read("look_at", c.cameras.look_at);
    if (const json* list = m.Get("list")) {
      if (!list->is_array()) throw ConfigError("cameras.list", "expected an array");
      for (std::size_t i = 0; i < list->size(); ++i) {
        ObjectReader v((*list)[i], "cameras.list[" + std::to_string(i) + "]");
        CameraViewpoint vp;
        v.Read("eye", vp.eye);
        v.Read("target", vp.target);
        v.Read("up", vp.up);
        v.Finish();
        c.cameras.list.push_back(vp);
      }
    }
    m.Finish();
  }
  if (const json* j = r.Get("render")) {
    ObjectReader m(*j, "render");
    m.Read("height", c.render.height);
    m.Read("width", c.render.width);
    m.Read("samples_per_axis", c.render.samples_per_axis);
    m.Read("target_samples_per_axis", c.render.target_samples_per_axis);
    m.Read("p0", c.render.p0);
    m.Read("p1", c.render.p1);
    m.Finish();
  }
  if (const json* j = r.Get("objective")) {
    ObjectReader m(*j, "objective");
    m.Read("lambda", c.lambda);
    m.Finish();
  }
  if (const json* j = r.Get("optimizer")) {
    ObjectReader m(*j, "optimizer");
    m.Read("alpha", c.adam.alpha);
    m.Read("beta1", c.adam.beta1);
    m.Read("beta2", c.adam.beta2);
    m.Read("eps", c.adam.eps);
    m.Read("iterations", c.iterations);
    m.Finish();
  }
  if (const json* j = r.Get("pose")) {
    ObjectReader m(*j, "pose");
    m.Read("joints", c.pose.joints);
    m.Read("perturbed_joints", c.pose.perturbed_joints);
    m.Read("min_angle_deg", c.pose.min_angle_deg);
    m.Read("max_angle_deg", c.pose.max_angle_deg);
    std::string free;
    m.Read("free", free);
    if (!free.empty()) c.pose.free = ParseFreeSet(free, "pose.free");
    m.Read("init", c.pose.init);
    m.Finish();
  }
  if (const json* j = r.Get("rigid")) {
    ObjectReader m(*j, "rigid");
    m.Read("truth", c.rigid.truth);
    m.Read("init", c.rigid.init);
    m.Read("free", c.rigid.free);
    m.Finish();
  }
  if (const json* j = r.Get("seed")) {
    if (!j->is_number_unsigned() && !j->is_number_integer()) {
      throw ConfigError("seed", "expected a non-negative integer");
    }
    if (j->is_number_integer() && j->get<long long>() < 0) {
      throw ConfigError("seed", "expected a non-negative integer");
    }
    c.seed = j->get<std::uint64_t>();
  }
  r.Read("threads", c.threads);
  r.Finish();
  ValidateSceneConfig(c);
  return c;
}

SceneConfig LoadSceneConfig(const std::string& path) {
  std::string text;
  try {
    text = ReadFile(path);
  } catch (const std::exception& e) {
    throw ConfigError("--config", e.what());
  }
  return ParseSceneConfig(text);
}

void ValidateSceneConfig(const SceneConfig& c) {
  if (c.model.kind == ModelKind::kObj && c.model.obj_path.empty()) {
    throw ConfigError("model.obj_path", "required for model kind obj");
  }
  if (c.model.segments < 3) throw ConfigError("model.segments", "must be >= 3");
  if (c.model.rings < 2) throw ConfigError("model.rings", "must be >= 2");
  if (c.cameras.focal && !(*c.cameras.focal > 0.0)) {
    throw ConfigError("cameras.focal", "must be positive");
  }
  if (c.cameras.list.empty()) {
    if (c.cameras.count < 1) throw ConfigError("cameras.count", "must be >= 1");
    if (!(c.cameras.radius > 0.0)) {
      throw ConfigError("cameras.radius", "must be positive");
    }
  }
  if (c.render.height < 1) throw ConfigError("render.height", "must be >= 1");
  if (c.render.width < 1) throw ConfigError("render.width", "must be >= 1");
  if (c.render.samples_per_axis < 1) {
    throw ConfigError("render.samples_per_axis", "must be >= 1");
  }
  if (c.render.target_samples_per_axis && *c.render.target_samples_per_axis < 1) {
    throw ConfigError("render.target_samples_per_axis", "must be >= 1");
  }
  if (c.render.p0 == c.render.p1) {
    throw ConfigError("render.p1", "must differ from render.p0");
  }
  if (!(c.lambda >= 0.0)) throw ConfigError("objective.lambda", "must be >= 0");
  if (!(c.adam.alpha > 0.0)) throw ConfigError("optimizer.alpha", "must be positive");
  if (!(c.adam.beta1 >= 0.0 && c.adam.beta1 < 1.0)) {
    throw ConfigError("optimizer.beta1", "must be in [0, 1)");
  }
  if (!(c.adam.beta2 >= 0.0 && c.adam.beta2 < 1.0)) {
    throw ConfigError("optimizer.beta2", "must be in [0, 1)");
  }
  if (!(c.adam.eps > 0.0)) throw ConfigError("optimizer.eps", "must be positive");
  if (c.iterations < 1) throw ConfigError("optimizer.iterations", "must be >= 1");
  if (c.pose.perturbed_joints < 0) {
    throw ConfigError("pose.perturbed_joints", "must be >= 0");
  }
  if (!(c.pose.min_angle_deg >= 0.0) ||
      !(c.pose.max_angle_deg >= c.pose.min_angle_deg)) {
    throw ConfigError("pose.max_angle_deg",
                      "need 0 <= min_angle_deg <= max_angle_deg");
  }
  if (c.rigid.truth.size() != RigidParams::kSize) {
    throw ConfigError("rigid.truth", "expected 7 numbers");
  }
  if (c.rigid.init.size() != RigidParams::kSize) {
    throw ConfigError("rigid.init", "expected 7 numbers");
  }
  if (!(c.rigid.truth[6] > 0.0)) throw ConfigError("rigid.truth", "scale must be positive");
  if (!(c.rigid.init[6] > 0.0)) throw ConfigError("rigid.init", "scale must be positive");
  static const std::set<std::string> kRigidNames = {"tx", "ty", "tz", "rx",
                                                    "ry", "rz", "scale"};
  for (const std::string& f : c.rigid.free) {
    if (!kRigidNames.count(f)) {
      throw ConfigError("rigid.free", "unknown parameter '" + f + "'");
    }
  }
  if (c.threads < 0) throw ConfigError("threads", "must be >= 0");
}

std::string SceneConfigToJson(const SceneConfig& c) {
  json j;
  j["model"] = {{"kind", ModelKindName(c.model.kind)},
                {"obj_path", c.model.obj_path},
                {"segments", c.model.segments},
                {"rings", c.model.rings},
                {"smooth_weights", c.model.smooth_weights}};
  json cams = {{"kind", c.cameras.kind == CameraKind::kOrthographic
                            ? "orthographic"
                            : "perspective"},
               {"count", c.cameras.count},
               {"radius", c.cameras.radius},
               {"elevation_deg", c.cameras.elevation_deg},
               {"look_at", ToJson(c.cameras.look_at)}};
  if (c.cameras.focal) cams["focal"] = *c.cameras.focal;
  if (c.cameras.principal_point) {
    cams["principal_point"] = {c.cameras.principal_point->x(),
                               c.cameras.principal_point->y()};
  }
  if (!c.cameras.list.empty()) {
    cams["list"] = json::array();
    for (const CameraViewpoint& v : c.cameras.list) {
      cams["list"].push_back(
          {{"eye", ToJson(v.eye)}, {"target", ToJson(v.target)}, {"up", ToJson(v.up)}});
    }
  }
  j["cameras"] = cams;
  j["render"] = {{"height", c.render.height},
                 {"width", c.render.width},
                 {"samples_per_axis", c.render.samples_per_axis},
                 {"p0", c.render.p0},
                 {"p1", c.render.p1}};
  if (c.render.target_samples_per_axis) {
    j["render"]["target_samples_per_axis"] = *c.render.target_samples_per_axis;
  }
  j["objective"] = {{"lambda", c.lambda}};
  j["optimizer"] = {{"alpha", c.adam.alpha},
                    {"beta1", c.adam.beta1},
                    {"beta2", c.adam.beta2},
                    {"eps", c.adam.eps},
                    {"iterations", c.iterations}};
  j["pose"] = {{"joints", c.pose.joints},
               {"perturbed_joints", c.pose.perturbed_joints},
               {"min_angle_deg", c.pose.min_angle_deg},
               {"max_angle_deg", c.pose.max_angle_deg},
               {"free", FreeSetName(c.pose.free)},
               {"init", c.pose.init}};
  j["rigid"] = {{"truth", c.rigid.truth},
                {"init", c.rigid.init},
                {"free", c.rigid.free}};
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j.dump(2) + "\n";
}

}  // namespace silrender
