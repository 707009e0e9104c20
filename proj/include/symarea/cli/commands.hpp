#pragma once

// Command-line driver. `run` parses argv, dispatches to a subcommand, writes
// the report to `out` and diagnostics (errors, timings) to `err`, and returns
// the process exit code:
//   0 ok, 1 input error, 2 geometric refusal (NotRegular), 3 identity failure.

#include <chrono>
#include <cstdint>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "symarea/area.hpp"
#include "symarea/cli/report.hpp"
#include "symarea/cli/scene.hpp"
#include "symarea/random.hpp"
#include "symarea/verify.hpp"
#include "symarea/version.hpp"

namespace symarea::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kRefused = 2, kIdentityFailure = 3 };

struct Options {
  std::string scene_path;
  int grid = kDefaultGrid;
  bool grid_given = false;
  int trials = 100;
  std::uint64_t seed = 0;
  std::string space = "1,1";
  std::string format = "csv";
  bool dump_scene = false;
  bool random = false;
  std::string triangle;
  std::string pair;
};

/// A pair of the triangle is not Regular; carries the scene names.
class Refusal : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline std::vector<std::string> split_names(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(item);
  return out;
}

inline SpaceParams parse_space(const std::string& s) {
  const auto parts = split_names(s);
  try {
    if (parts.size() != 2) throw std::invalid_argument("");
    return SpaceParams(std::stoi(parts[0]), std::stoi(parts[1]));
  } catch (const std::exception&) {
    throw InputError("--space expects k,m with k,m >= 1, got '" + s + "'");
  }
}

class Timer {
 public:
  Timer(std::ostream& err, std::string label)
      : err_(err), label_(std::move(label)), start_(std::chrono::steady_clock::now()) {}
  ~Timer() {
    const double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    err_ << "# timing " << label_ << " " << format_double(s) << " s\n";
  }

 private:
  std::ostream& err_;
  std::string label_;
  std::chrono::steady_clock::time_point start_;
};

inline void emit(std::ostream& out, const Options& opt, const Report& report) {
  if (opt.format == "full") {
    write_full(out, report);
  } else {
    write_csv(out, report);
  }
}

inline std::string join(const std::vector<std::string>& names) {
  std::string s;
  for (const auto& n : names) s += (s.empty() ? "" : ",") + n;
  return s;
}

inline std::vector<Task> selected_tasks(const Scene& scene, const std::string& kind,
                                        const std::string& override_names, std::size_t arity) {
  std::vector<Task> tasks;
  if (!override_names.empty()) {
    Task t;
    t.kind = kind;
    t.points = split_names(override_names);
    if (t.points.size() != arity)
      throw InputError(kind + " needs " + std::to_string(arity) + " comma-separated point names");
    for (const auto& n : t.points) (void)scene.point(n);
    tasks.push_back(t);
    return tasks;
  }
  for (const auto& t : scene.tasks)
    if (t.kind == kind) tasks.push_back(t);
  if (tasks.empty()) throw InputError("scene has no " + kind + " tasks");
  return tasks;
}

}  // namespace detail

inline Record area_record(const Scene& scene, const Task& task, std::optional<int> grid) {
  const std::array<const ChartPoint*, 3> z{&scene.point(task.points[0]), &scene.point(task.points[1]),
                                           &scene.point(task.points[2])};
  static constexpr int kPairs[3][2] = {{0, 1}, {1, 2}, {2, 0}};
  for (const auto& pr : kPairs) {
    const PairClass cls = classify_pair(*z[pr[0]], *z[pr[1]]);
    if (!cls.regular())
      throw Refusal("pair (" + task.points[pr[0]] + "," + task.points[pr[1]] + "): " + to_string(cls.tag));
  }
  const Triangle tri(*z[0], *z[1], *z[2]);
  Record r;
  r.task = "area";
  r.inputs = detail::join(task.points);
  r.classification = "Regular";
  r.value = triangle_area(tri);
  r.psi = std::polar(1.0, 0.5 * *r.value);
  if (grid) {
    try {
      const int winding = filling_winding(tri);
      if (winding == 0) {
        r.oracle = surface_integral(tri, *grid);
      } else {
        r.oracle = cone_integral(tri, *grid) - 4.0 * kPi * winding;
        r.note = "filling_winding=" + std::to_string(winding);
      }
      r.residual = std::abs(*r.value - *r.oracle);
    } catch (const FillingLeavesChart& e) {
      r.note = e.what();
    }
    r.note += (r.note.empty() ? "" : ";") + std::string("grid=") + std::to_string(*grid);
  }
  return r;
}

inline Record classify_record(const Scene& scene, const Task& task) {
  const ChartPoint& z = scene.point(task.points[0]);
  const ChartPoint& w = scene.point(task.points[1]);
  const PairClass cls = classify_pair(z, w);
  Record r;
  r.task = "classify";
  r.inputs = detail::join(task.points);
  r.classification = to_string(cls.tag);
  if (cls.regular()) r.value = distance(z, w);
  r.note = "max_angle=" + format_double(cls.max_angle) + ";min_boundary=" + format_double(cls.min_boundary);
  return r;
}

inline Record sphere_record(const SpaceParams& space, int grid) {
  Record r;
  r.task = "sphere";
  r.inputs = std::to_string(space.k()) + "," + std::to_string(space.m());
  r.value = sphere_area(space, grid);
  r.oracle = 4.0 * kPi;
  r.residual = std::abs(*r.value - *r.oracle);
  r.note = "grid=" + std::to_string(grid);
  return r;
}

inline std::vector<Record> verify_records(const SpaceParams& space, int trials, std::uint64_t seed,
                                          int grid, bool& passed) {
  const CampaignResult res = run_identity_campaign(space, trials, seed, grid);
  passed = res.passed();
  std::vector<Record> out;
  for (const IdentityCheck& c : res.checks) {
    Record r;
    r.task = "verify";
    r.inputs = c.name;
    r.classification = c.passed() ? "pass" : "fail";
    r.value = c.max_residual;
    r.oracle = c.threshold;
    r.note = "space=" + std::to_string(space.k()) + "," + std::to_string(space.m()) +
             ";trials=" + std::to_string(res.trials) + ";campaign_seed=" + std::to_string(seed) + ";evaluated=" + std::to_string(c.evaluated) +
             ";skipped=" + std::to_string(c.skipped) + ";rejected=" + std::to_string(res.rejected);
    if (c.name == "formula_vs_quadrature")
      r.note += ";crossing_fillings=" + std::to_string(res.crossing_fillings);
    if (c.name == "u_invariance") r.note += ";winding_shifts=" + std::to_string(res.winding_shifts);
    if (!c.passed()) {
      r.note += ";failed_seeds=";
      for (std::size_t i = 0; i < c.failing_seeds.size(); ++i)
        r.note += (i ? " " : "") + std::to_string(c.failing_seeds[i]);
    }
    out.push_back(r);
  }
  return out;
}

/// Scene of `count` random well-separated triangles with one area task each.
inline Scene sample_scene(const SpaceParams& space, int count, std::uint64_t seed) {
  Scene scene;
  scene.k = space.k();
  scene.m = space.m();
  Rng rng(seed);
  int rejected = 0;
  for (int i = 0; i < count; ++i) {
    const auto pts = sample_configuration(rng, space, 3, rejected);
    Task task;
    task.kind = "area";
    for (int v = 0; v < 3; ++v) {
      const std::string name = "t" + std::to_string(i) + "_" + std::to_string(v);
      scene.points.push_back({name, pts[v]});
      task.points.push_back(name);
    }
    scene.tasks.push_back(task);
  }
  return scene;
}

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Symplectic area of geodesic triangles in complex Grassmannians"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);
  Options opt;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("--scene", opt.scene_path, "scene file (JSON)");
    sub->add_option("--seed", opt.seed, "RNG seed");
    sub->add_option("--format", opt.format, "report format")->check(CLI::IsMember({"csv", "full"}));
    sub->add_flag("--dump-scene", opt.dump_scene, "print the parsed scene and exit");
  };

  CLI::App* area = app.add_subcommand("area", "area of a geodesic triangle");
  common(area);
  area->add_option("--grid", opt.grid, "surface quadrature grid (enables the oracle)");
  area->add_option("--triangle", opt.triangle, "three point names a,b,c");

  CLI::App* classify = app.add_subcommand("classify", "classify a pair of points");
  common(classify);
  classify->add_option("--pair", opt.pair, "two point names a,b");

  CLI::App* verify = app.add_subcommand("verify", "randomized identity campaign");
  common(verify);
  verify->add_flag("--random", opt.random, "sample random configurations");
  verify->add_option("--trials", opt.trials, "number of trials");
  verify->add_option("--space", opt.space, "k,m");
  verify->add_option("--grid", opt.grid, "surface quadrature grid");

  CLI::App* sphere = app.add_subcommand("sphere", "area of a Helgason sphere");
  common(sphere);
  sphere->add_option("--space", opt.space, "k,m");
  sphere->add_option("--grid", opt.grid, "quadrature grid");

  CLI::App* sample = app.add_subcommand("sample", "emit a scene of random regular triangles");
  common(sample);
  sample->add_option("--space", opt.space, "k,m");
  sample->add_option("--trials", opt.trials, "number of triangles");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  opt.grid_given = area->count("--grid") > 0;

  try {
    std::optional<Scene> scene;
    if (!opt.scene_path.empty()) scene = load_scene(opt.scene_path);
    if (opt.dump_scene) {
      if (!scene) throw InputError("--dump-scene requires --scene");
      out << dump_scene(*scene);
      return kOk;
    }
    if (opt.grid < 1) throw InputError("--grid must be positive");
    if (opt.trials < 0) throw InputError("--trials must be non-negative");

    Report report;
    report.seed = opt.seed;

    if (area->parsed()) {
      if (!scene) throw InputError("area requires --scene");
      for (const Task& task : detail::selected_tasks(*scene, "area", opt.triangle, 3)) {
        const detail::Timer timer(err, "area " + detail::join(task.points));
        std::optional<int> grid;
        if (opt.grid_given) grid = opt.grid;
        else if (task.grid) grid = *task.grid;
        report.records.push_back(area_record(*scene, task, grid));
      }
    } else if (classify->parsed()) {
      if (!scene) throw InputError("classify requires --scene");
      for (const Task& task : detail::selected_tasks(*scene, "classify", opt.pair, 2))
        report.records.push_back(classify_record(*scene, task));
    } else if (sphere->parsed()) {
      const SpaceParams space = detail::parse_space(opt.space);
      const detail::Timer timer(err, "sphere");
      report.records.push_back(sphere_record(space, opt.grid));
    } else if (verify->parsed()) {
      bool all_passed = true;
      const auto run_campaign = [&](const SpaceParams& space, int trials, std::uint64_t seed) {
        const detail::Timer timer(err, "verify");
        bool passed = true;
        for (auto& r : verify_records(space, trials, seed, opt.grid, passed)) report.records.push_back(r);
        all_passed = all_passed && passed;
      };
      if (scene && !opt.random) {
        bool any = false;
        for (const Task& t : scene->tasks) {
          if (t.kind != "verify") continue;
          any = true;
          run_campaign(scene->space(), t.trials.value_or(opt.trials), t.seed.value_or(opt.seed));
        }
        if (!any) throw InputError("scene has no verify tasks");
      } else {
        if (!opt.random) throw InputError("verify needs --scene or --random");
        run_campaign(detail::parse_space(opt.space), opt.trials, opt.seed);
      }
      detail::emit(out, opt, report);
      if (!all_passed) {
        err << "identity failures:";
        for (const Record& r : report.records)
          if (r.classification == "fail") err << ' ' << r.inputs;
        err << " (see failed_seeds; rerun with --trials 1 --seed <seed>)\n";
        return kIdentityFailure;
      }
      return kOk;
    } else if (sample->parsed()) {
      out << dump_scene(sample_scene(detail::parse_space(opt.space), opt.trials, opt.seed));
      return kOk;
    }
    detail::emit(out, opt, report);
    return kOk;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const Refusal& e) {
    err << "refused: " << e.what() << '\n';
    return kRefused;
  } catch (const NotRegular& e) {
    err << "refused: " << e.what() << '\n';
    return kRefused;
  }
}

inline int run(int argc, const char* const argv[], std::ostream& out, std::ostream& err) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run(args, out, err);
}

}  // namespace symarea::cli
