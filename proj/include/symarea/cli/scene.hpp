#pragma once

// Scene files: a JSON document declaring the space, named chart points and a
// task list. Complex numbers are [re, im] pairs, matrices nested row-major
// arrays of them.
//
//   {
//     "space":  {"k": 1, "m": 1},
//     "points": [{"name": "a", "value": [[[0, 0]]]}, ...],
//     "tasks":  [{"kind": "area", "points": ["a", "b", "c"], "grid": 128}, ...]
//   }

#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "symarea/chart.hpp"

namespace symarea::cli {

using json = nlohmann::ordered_json;

/// Malformed scene or command-line input (exit code 1).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct NamedPoint {
  std::string name;
  ChartPoint value;
};

struct Task {
  std::string kind;                 // area | classify | verify | sphere | sample
  std::vector<std::string> points;  // area: 3 names, classify: 2 names
  std::optional<int> grid;
  std::optional<int> trials;
  std::optional<std::uint64_t> seed;

  friend bool operator==(const Task&, const Task&) = default;
};

struct Scene {
  int k = 1;
  int m = 1;
  std::vector<NamedPoint> points;
  std::vector<Task> tasks;

  SpaceParams space() const { return {k, m}; }

  const ChartPoint& point(const std::string& name) const {
    for (const auto& p : points)
      if (p.name == name) return p.value;
    throw InputError("unknown point '" + name + "'");
  }
};

inline bool operator==(const Scene& a, const Scene& b) {
  if (a.k != b.k || a.m != b.m || a.tasks != b.tasks || a.points.size() != b.points.size()) return false;
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    if (a.points[i].name != b.points[i].name) return false;
    if (a.points[i].value.matrix() != b.points[i].value.matrix()) return false;
  }
  return true;
}

inline json matrix_to_json(const CMatrix& z) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < z.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < z.cols(); ++j) row.push_back({z(i, j).real(), z(i, j).imag()});
    rows.push_back(row);
  }
  return rows;
}

inline CMatrix matrix_from_json(const json& j, int k, int m, const std::string& what) {
  if (!j.is_array() || static_cast<int>(j.size()) != k)
    throw InputError(what + ": expected " + std::to_string(k) + " rows");
  CMatrix z(k, m);
  for (int r = 0; r < k; ++r) {
    const json& row = j[r];
    if (!row.is_array() || static_cast<int>(row.size()) != m)
      throw InputError(what + ": expected " + std::to_string(m) + " columns");
    for (int c = 0; c < m; ++c) {
      const json& e = row[c];
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw InputError(what + ": entries must be [re, im] pairs");
      z(r, c) = Complex(e[0].get<double>(), e[1].get<double>());
    }
  }
  return z;
}

inline Scene scene_from_json(const json& doc) {
  try {
    Scene scene;
    const json& space = doc.at("space");
    scene.k = space.at("k").get<int>();
    scene.m = space.at("m").get<int>();
    (void)scene.space();  // validates k, m

    std::set<std::string> names;
    if (doc.contains("points")) {
      for (const json& p : doc.at("points")) {
        const auto name = p.at("name").get<std::string>();
        if (!names.insert(name).second) throw InputError("duplicate point name '" + name + "'");
        scene.points.push_back({name, ChartPoint(matrix_from_json(p.at("value"), scene.k, scene.m,
                                                                  "point '" + name + "'"))});
      }
    }
    if (doc.contains("tasks")) {
      for (const json& t : doc.at("tasks")) {
        Task task;
        task.kind = t.at("kind").get<std::string>();
        if (task.kind != "area" && task.kind != "classify" && task.kind != "verify" &&
            task.kind != "sphere" && task.kind != "sample")
          throw InputError("unknown task kind '" + task.kind + "'");
        if (t.contains("points")) task.points = t.at("points").get<std::vector<std::string>>();
        if (t.contains("grid")) task.grid = t.at("grid").get<int>();
        if (t.contains("trials")) task.trials = t.at("trials").get<int>();
        if (t.contains("seed")) task.seed = t.at("seed").get<std::uint64_t>();
        const std::size_t arity = task.kind == "area" ? 3 : task.kind == "classify" ? 2 : 0;
        if (task.points.size() != arity)
          throw InputError(task.kind + " task needs " + std::to_string(arity) + " point names");
        for (const auto& n : task.points)
          if (!names.count(n)) throw InputError("task refers to unknown point '" + n + "'");
        scene.tasks.push_back(std::move(task));
      }
    }
    return scene;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed scene: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(std::string("malformed scene: ") + e.what());
  }
}

inline json scene_to_json(const Scene& scene) {
  json doc;
  doc["space"] = {{"k", scene.k}, {"m", scene.m}};
  doc["points"] = json::array();
  for (const auto& p : scene.points) doc["points"].push_back({{"name", p.name}, {"value", matrix_to_json(p.value.matrix())}});
  doc["tasks"] = json::array();
  for (const auto& t : scene.tasks) {
    json j;
    j["kind"] = t.kind;
    if (!t.points.empty()) j["points"] = t.points;
    if (t.grid) j["grid"] = *t.grid;
    if (t.trials) j["trials"] = *t.trials;
    if (t.seed) j["seed"] = *t.seed;
    doc["tasks"].push_back(j);
  }
  return doc;
}

inline Scene parse_scene(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    throw InputError(std::string("scene is not valid JSON: ") + e.what());
  }
  return scene_from_json(doc);
}

inline Scene load_scene(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open scene file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_scene(buf.str());
}

/// Pretty-printed scene; doubles round-trip exactly.
inline std::string dump_scene(const Scene& scene) { return scene_to_json(scene).dump(2) + "\n"; }

}  // namespace symarea::cli
