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


#include "silrender/cli.h"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "silrender/config.h"
#include "silrender/gradcheck.h"
#include "silrender/image_io.h"
#include "silrender/io.h"
#include "silrender/raster_backward.h"
#include "silrender/scene.h"

namespace silrender {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

// Flags shared by the scene-based commands; set ones override the config.
struct SceneFlags {
  std::string config;
  std::string mode;
  std::optional<std::uint64_t> seed;
  std::optional<int> threads;
  std::optional<int> iterations;
  std::optional<double> alpha;
  std::optional<int> samples;
  std::optional<int> target_samples;
};

void AddSceneFlags(CLI::App* cmd, SceneFlags& f, bool with_mode) {
  cmd->add_option("--config", f.config, "Scene JSON; defaults apply when absent")
      ->check(CLI::ExistingFile);
  if (with_mode) {
    cmd->add_option("--mode", f.mode, "rigid or pose (default by model kind)")
        ->check(CLI::IsMember({"rigid", "pose"}));
  }
  cmd->add_option("--seed", f.seed, "Overrides seed");
  cmd->add_option("--threads", f.threads, "Worker cap; overrides threads");
  cmd->add_option("--samples", f.samples,
                  "Supersampling per axis; overrides render.samples_per_axis");
  cmd->add_option("--target-samples", f.target_samples,
                  "Overrides render.target_samples_per_axis");
}

void AddFitFlags(CLI::App* cmd, SceneFlags& f) {
  cmd->add_option("--iterations", f.iterations, "Overrides iterations");
  cmd->add_option("--alpha", f.alpha, "Overrides optimizer.alpha");
}

SceneConfig ResolveConfig(const SceneFlags& f) {
  SceneConfig config = f.config.empty() ? SceneConfig{} : LoadSceneConfig(f.config);
  if (f.seed) config.seed = *f.seed;
  if (f.threads) {
    if (*f.threads < 1) throw ConfigError("--threads", "must be >= 1");
    config.threads = *f.threads;
  }
  if (f.iterations) {
    if (*f.iterations < 1) throw ConfigError("--iterations", "must be >= 1");
    config.iterations = *f.iterations;
  }
  if (f.alpha) {
    if (!(*f.alpha > 0.0)) throw ConfigError("--alpha", "must be > 0");
    config.adam.alpha = *f.alpha;
  }
  if (f.samples) {
    if (*f.samples < 1) throw ConfigError("--samples", "must be >= 1");
    config.render.samples_per_axis = *f.samples;
  }
  if (f.target_samples) {
    if (*f.target_samples < 1) {
      throw ConfigError("--target-samples", "must be >= 1");
    }
    config.render.target_samples_per_axis = *f.target_samples;
  }
  ValidateSceneConfig(config);
  return config;
}

FitMode ResolveMode(const SceneConfig& config, const std::string& flag) {
  if (flag == "rigid") return FitMode::kRigid;
  if (flag == "pose") return FitMode::kPose;
  const bool articulated = config.model.kind == ModelKind::kArm ||
                           config.model.kind == ModelKind::kHumanoid;
  return articulated ? FitMode::kPose : FitMode::kRigid;
}

const char* ModeName(FitMode mode) {
  return mode == FitMode::kRigid ? "rigid" : "pose";
}

std::string ViewStem(const std::string& prefix, std::size_t view) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "_%02zu", view);
  return prefix + buf;
}

void WriteJson(const json& j, const fs::path& path) {
  WriteFileAtomic(path, j.dump(2) + "\n");
}

json CameraToJson(const Camera& cam) {
  json rotation = json::array();
  for (int r = 0; r < 3; ++r) {
    for (int c = 0; c < 3; ++c) rotation.push_back(cam.rotation(r, c));
  }
  return json{
      {"kind", cam.kind == CameraKind::kPerspective ? "perspective"
                                                     : "orthographic"},
      {"rotation", rotation},
      {"translation",
       {cam.translation.x(), cam.translation.y(), cam.translation.z()}},
      {"focal", cam.focal},
      {"principal_point",
       {cam.principal_point.x(), cam.principal_point.y()}},
      {"height", cam.height},
      {"width", cam.width}};
}

Camera CameraFromJson(const json& j, const std::string& where) {
  Camera cam;
  try {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "perspective") {
      cam.kind = CameraKind::kPerspective;
    } else if (kind == "orthographic") {
      cam.kind = CameraKind::kOrthographic;
    } else {
      throw ConfigError(where + ".kind", "unknown camera kind '" + kind + "'");
    }
    const auto rotation = j.at("rotation").get<std::vector<double>>();
    const auto translation = j.at("translation").get<std::vector<double>>();
    const auto pp = j.at("principal_point").get<std::vector<double>>();
    if (rotation.size() != 9 || translation.size() != 3 || pp.size() != 2) {
      throw ConfigError(where, "wrong array length");
    }
    for (int k = 0; k < 9; ++k) cam.rotation(k / 3, k % 3) = rotation[k];
    cam.translation = Vec3(translation[0], translation[1], translation[2]);
    cam.principal_point = Vec2(pp[0], pp[1]);
    cam.focal = j.at("focal").get<double>();
    cam.height = j.at("height").get<int>();
    cam.width = j.at("width").get<int>();
    cam.Validate();
  } catch (const json::exception& e) {
    throw ConfigError(where, e.what());
  } catch (const std::invalid_argument& e) {
    if (dynamic_cast<const ConfigError*>(&e)) throw;
    throw ConfigError(where, e.what());
  }
  return cam;
}

// Targets and ground truth written by gen-data. The truth replaces the one
// drawn from the config so that E_p refers to the stored data.
void LoadData(const fs::path& dir, Scene& scene, MultiViewTargets& targets) {
  json cameras, truth;
  try {
    cameras = json::parse(ReadFile(dir / "cameras.json"));
    truth = json::parse(ReadFile(dir / "truth.json"));
  } catch (const std::exception& e) {
    throw ConfigError("--data", e.what());
  }
  if (!cameras.is_array() || cameras.empty()) {
    throw ConfigError("--data", "cameras.json must be a non-empty array");
  }
  const std::string mode = truth.value("mode", "");
  if (mode != ModeName(scene.mode)) {
    throw ConfigError("--data", "truth.json holds a '" + mode +
                                    "' scene, expected '" +
                                    ModeName(scene.mode) + "'");
  }
  std::vector<double> params;
  try {
    params = truth.at("params").get<std::vector<double>>();
  } catch (const json::exception& e) {
    throw ConfigError("--data", e.what());
  }
  if (params.size() != scene.truth.size()) {
    throw ConfigError("--data", "truth.json has " +
                                    std::to_string(params.size()) +
                                    " parameters, the model has " +
                                    std::to_string(scene.truth.size()));
  }
  scene.truth = std::move(params);

  const RenderConfig& render = scene.config.render;
  targets.clear();
  scene.cameras.clear();
  for (std::size_t k = 0; k < cameras.size(); ++k) {
    const Camera cam =
        CameraFromJson(cameras[k], "--data cameras[" + std::to_string(k) + "]");
    SilhouetteImage image(cam.height, cam.width, render.p0, render.p1);
    std::vector<float> raw;
    try {
      raw = ReadRawFloat32(dir / (ViewStem("view", k) + ".raw"), image.size());
    } catch (const std::exception& e) {
      throw ConfigError("--data", e.what());
    }
    for (std::size_t i = 0; i < raw.size(); ++i) image.data[i] = raw[i];
    scene.cameras.push_back(cam);
    targets.push_back(ViewTarget{cam, std::move(image)});
  }
}

json TruthJson(const Scene& scene) {
  json joints = json::array();
  if (scene.skeleton) {
    for (int j : scene.perturbed_joints) joints.push_back(scene.skeleton->names[j]);
  }
  return json{{"mode", ModeName(scene.mode)},
              {"param_names", scene.param_names},
              {"params", scene.truth},
              {"perturbed_joints", joints}};
}

void WriteSilhouette(const SilhouetteImage& image, const fs::path& stem,
                     bool raw) {
  WritePgm(image, fs::path(stem.string() + ".pgm"));
  if (PngSupported()) WriteSilhouettePng(image, fs::path(stem.string() + ".png"));
  if (raw) WriteRawFloat32(image.data, fs::path(stem.string() + ".raw"));
}

std::vector<SilhouetteImage> RenderViews(const Scene& scene,
                                         std::span<const double> params,
                                         const RenderSettings& settings) {
  const TriangleMesh posed = scene.Evaluate(params).mesh;
  RasterOptions raster;
  raster.threads = scene.config.threads;
  std::vector<SilhouetteImage> out;
  for (const Camera& cam : scene.cameras) {
    out.push_back(Rasterize(Project(posed, cam).screen, cam.height, cam.width,
                            settings, raster));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands.

int RunGenData(const SceneFlags& flags, const std::string& out_dir,
               std::ostream& out) {
  const SceneConfig config = ResolveConfig(flags);
  const Scene scene = BuildScene(config, ResolveMode(config, flags.mode));
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const MultiViewTargets targets = RenderTargets(scene, scene.truth);
  json cameras = json::array();
  for (std::size_t k = 0; k < targets.size(); ++k) {
    WriteSilhouette(targets[k].image, dir / ViewStem("view", k), true);
    cameras.push_back(CameraToJson(targets[k].camera));
  }
  WriteJson(cameras, dir / "cameras.json");
  WriteJson(TruthJson(scene), dir / "truth.json");
  SaveObj(scene.Evaluate(scene.truth).mesh, dir / "truth.obj");
  WriteFileAtomic(dir / "scene.json", SceneConfigToJson(config));
  out << "wrote " << targets.size() << " views of " << config.render.height
      << "x" << config.render.width << " (" << ModeName(scene.mode)
      << " scene) to " << dir.string() << "\n";
  return kExitOk;
}

int RunRender(const SceneFlags& flags, const std::string& out_dir,
              const std::string& at, bool raw, std::ostream& out) {
  const SceneConfig config = ResolveConfig(flags);
  const Scene scene = BuildScene(config, ResolveMode(config, flags.mode));
  const std::vector<double>& params = at == "init" ? scene.init : scene.truth;
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  const std::vector<SilhouetteImage> views =
      RenderViews(scene, params, scene.FitRender());
  for (std::size_t k = 0; k < views.size(); ++k) {
    WriteSilhouette(views[k], dir / ViewStem("render", k), raw);
  }
  out << "rendered " << views.size() << " views at " << at << " (F="
      << config.render.samples_per_axis << ") to " << dir.string() << "\n";
  return kExitOk;
}

int RunGradmap(const SceneFlags& flags, const std::string& out_dir,
               const std::string& param, const std::string& at,
               std::ostream& out) {
  const SceneConfig config = ResolveConfig(flags);
  const Scene scene = BuildScene(config, FitMode::kRigid);
  // tx, ty: world translation; rot: rotation about the world z axis; scale:
  // uniform scale about the model origin.
  const int column = param == "tx"    ? 0
                     : param == "ty"  ? 1
                     : param == "rot" ? 5
                                      : 6;
  const std::vector<double>& params = at == "init" ? scene.init : scene.truth;
  const PosedMesh posed = scene.Evaluate(params);
  const fs::path dir(out_dir);
  fs::create_directories(dir);
  for (std::size_t k = 0; k < scene.cameras.size(); ++k) {
    const Camera& cam = scene.cameras[k];
    const Projection proj = Project(posed.mesh, cam);
    std::vector<Vec2> direction(posed.mesh.vertices.size());
    for (std::size_t v = 0; v < direction.size(); ++v) {
      const Vec3 dv = posed.jacobian.block<3, 1>(static_cast<Eigen::Index>(3 * v),
                                                 column);
      direction[v] = proj.jacobians[v] * dv;
    }
    const std::vector<double> g = ParameterGradientImage(
        proj.screen, direction, cam.height, cam.width, scene.FitRender(),
        config.threads);
    const fs::path stem = dir / ViewStem("gradmap_" + param, k);
    WriteRawFloat32(g, fs::path(stem.string() + ".raw"));
    if (PngSupported()) {
      WriteGradientPng(g, cam.height, cam.width, fs::path(stem.string() + ".png"));
    }
    double sum = 0.0, peak = 0.0;
    int nonzero = 0;
    for (double x : g) {
      sum += x;
      peak = std::max(peak, std::abs(x));
      nonzero += x != 0.0;
    }
    char line[160];
    std::snprintf(line, sizeof(line),
                  "view %zu: d/d%s sum %.6g, max |g| %.6g, %d nonzero pixels\n",
                  k, param.c_str(), sum, peak, nonzero);
    out << line;
  }
  return kExitOk;
}

int RunGradcheck(std::uint64_t seed, int cases, int trials, std::ostream& out) {
  std::vector<oracle::CheckResult> results = {
      oracle::CheckEdgePartials(seed, cases), oracle::CheckWorkedExamples(),
      oracle::CheckTriangleLoss(seed + 1, trials),
      oracle::CheckProjectionJacobians(seed + 2),
      oracle::CheckModelJacobians(seed + 3)};
  bool ok = true;
  double worst_relative = 0.0;
  for (const oracle::CheckResult& r : results) {
    char line[200];
    std::snprintf(line, sizeof(line),
                  "%-4s %-40s cases %5d  max err %.3e  tol %.0e  %.2f s\n",
                  r.passed() ? "ok" : "FAIL", r.name.c_str(), r.cases,
                  r.max_error, r.tolerance, r.seconds);
    out << line;
    ok = ok && r.passed();
    if (r.name != "worked examples") {
      worst_relative = std::max(worst_relative, r.max_error);
    }
  }
  char line[80];
  std::snprintf(line, sizeof(line), "max relative error %.3e\n", worst_relative);
  out << line;
  return ok ? kExitOk : kExitFailure;
}

struct FitFlags {
  std::string out;
  std::string data;
  std::string init = "config";
  bool no_timing = false;
  int log_every = 100;
};

int RunFit(const SceneFlags& flags, const FitFlags& fit, FitMode mode,
           std::ostream& out, std::ostream& err) {
  const SceneConfig config = ResolveConfig(flags);
  Scene scene = BuildScene(config, mode);
  MultiViewTargets targets;
  if (fit.data.empty()) {
    targets = RenderTargets(scene, scene.truth);
  } else {
    LoadData(fit.data, scene, targets);
  }
  const FitProblem problem = MakeFitProblem(scene, targets);
  FitOptions options = MakeFitOptions(scene);
  options.record_timing = !fit.no_timing;
  if (fit.log_every > 0) {
    options.on_iteration = [&err, &fit](const TraceEntry& e) {
      if (e.iteration % fit.log_every == 0) {
        char line[160];
        std::snprintf(line, sizeof(line),
                      "iter %6d  E %.6g  E_sl %.6g  E_p %.6g\n", e.iteration,
                      e.e, e.e_sl, e.e_p);
        err << line;
      }
      return true;
    };
  }
  const std::vector<double> init = fit.init == "truth" ? scene.truth : scene.init;
  const FitResult result = Fit(problem, init, options);

  const fs::path dir(fit.out);
  fs::create_directories(dir);
  WriteFileAtomic(dir / "trace.csv", FormatTraceCsv(result.trace));
  SaveObj(scene.Evaluate(result.params).mesh, dir / "final.obj");
  const std::vector<SilhouetteImage> finals =
      RenderViews(scene, result.params, scene.FitRender());
  for (std::size_t k = 0; k < finals.size(); ++k) {
    WritePgm(finals[k], dir / (ViewStem("final", k) + ".pgm"));
    if (PngSupported()) {
      WriteOverlayPng(targets[k].image, finals[k],
                      dir / (ViewStem("overlay", k) + ".png"));
    }
  }
  const TraceEntry& first = result.trace.front();
  const TraceEntry& last = result.trace.back();
  json summary{{"mode", ModeName(mode)},
               {"param_names", scene.param_names},
               {"init", init},
               {"truth", scene.truth},
               {"params", result.params},
               {"iterations", last.iteration},
               {"aborted", result.aborted},
               {"abort_reason", result.abort_reason},
               {"e_sl_initial", first.e_sl},
               {"e_sl_final", last.e_sl},
               {"e_p_initial", first.e_p},
               {"e_p_final", last.e_p}};
  WriteJson(summary, dir / "result.json");

  char line[200];
  std::snprintf(line, sizeof(line),
                "%s fit: %d iterations, E_sl %.6g -> %.6g, E_p %.6g -> %.6g "
                "(%.1f%% reduction)\n",
                ModeName(mode), last.iteration, first.e_sl, last.e_sl,
                first.e_p, last.e_p,
                first.e_p > 0.0 ? 100.0 * (1.0 - last.e_p / first.e_p) : 0.0);
  out << line;
  if (result.aborted) {
    err << "error: fit aborted: " << result.abort_reason << "\n";
    return kExitFailure;
  }
  return kExitOk;
}

}  // namespace

int CliMain(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Differentiable silhouette rendering and multi-view fitting",
               "silrender"};
  app.require_subcommand(1);

  SceneFlags gen_flags;
  std::string gen_out;
  CLI::App* gen = app.add_subcommand(
      "gen-data", "Render ground-truth silhouettes from every camera");
  AddSceneFlags(gen, gen_flags, true);
  gen->add_option("--out", gen_out, "Output directory")->required();

  SceneFlags render_flags;
  std::string render_out, render_at = "truth";
  bool render_raw = false;
  CLI::App* render = app.add_subcommand("render", "One forward pass per camera");
  AddSceneFlags(render, render_flags, true);
  render->add_option("--out", render_out, "Output directory")->required();
  render->add_option("--at", render_at, "Parameters to render")
      ->check(CLI::IsMember({"truth", "init"}));
  render->add_flag("--raw", render_raw, "Also write float32 images");

  SceneFlags gradmap_flags;
  std::string gradmap_out, gradmap_param, gradmap_at = "truth";
  CLI::App* gradmap = app.add_subcommand(
      "gradmap", "Per-pixel derivative of the render w.r.t. one rigid parameter");
  AddSceneFlags(gradmap, gradmap_flags, false);
  gradmap->add_option("--out", gradmap_out, "Output directory")->required();
  gradmap->add_option("--param", gradmap_param, "tx, ty, rot or scale")
      ->required()
      ->check(CLI::IsMember({"tx", "ty", "rot", "scale"}));
  gradmap->add_option("--at", gradmap_at, "Parameters to differentiate at")
      ->check(CLI::IsMember({"truth", "init"}));

  std::uint64_t check_seed = 20260101;
  int check_cases = 1000, check_trials = 100;
  CLI::App* gradcheck = app.add_subcommand(
      "gradcheck", "Compare analytic derivatives with finite differences");
  gradcheck->add_option("--seed", check_seed, "Random seed");
  gradcheck->add_option("--cases", check_cases, "Edge/pixel configurations")
      ->check(CLI::PositiveNumber);
  gradcheck->add_option("--trials", check_trials, "Random triangles")
      ->check(CLI::PositiveNumber);

  SceneFlags rigid_flags, pose_flags;
  FitFlags rigid_fit, pose_fit;
  auto add_fit = [&app](const char* name, const char* help, SceneFlags& f,
                        FitFlags& fit) {
    CLI::App* cmd = app.add_subcommand(name, help);
    AddSceneFlags(cmd, f, false);
    AddFitFlags(cmd, f);
    cmd->add_option("--out", fit.out, "Output directory")->required();
    cmd->add_option("--data", fit.data,
                    "gen-data directory; targets are rendered in memory "
                    "when absent")
        ->check(CLI::ExistingDirectory);
    cmd->add_option("--init", fit.init, "Start from the config or the truth")
        ->check(CLI::IsMember({"config", "truth"}));
    cmd->add_flag("--no-timing", fit.no_timing, "Write wall_ms as 0");
    cmd->add_option("--log-every", fit.log_every,
                    "Progress line interval on stderr, 0 for none")
        ->check(CLI::NonNegativeNumber);
    return cmd;
  };
  CLI::App* fit_rigid = add_fit("fit-rigid", "Fit a similarity transform",
                                rigid_flags, rigid_fit);
  CLI::App* fit_pose =
      add_fit("fit-pose", "Fit joint rotations of an articulated body",
              pose_flags, pose_fit);

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) return RunGenData(gen_flags, gen_out, out);
    if (render->parsed()) {
      return RunRender(render_flags, render_out, render_at, render_raw, out);
    }
    if (gradmap->parsed()) {
      return RunGradmap(gradmap_flags, gradmap_out, gradmap_param, gradmap_at,
                        out);
    }
    if (gradcheck->parsed()) {
      return RunGradcheck(check_seed, check_cases, check_trials, out);
    }
    if (fit_rigid->parsed()) {
      return RunFit(rigid_flags, rigid_fit, FitMode::kRigid, out, err);
    }
    if (fit_pose->parsed()) {
      return RunFit(pose_flags, pose_fit, FitMode::kPose, out, err);
    }
  } catch (const ConfigError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace silrender
