#include "wbary/serialization.hpp"

#include <cmath>
#include <sstream>

namespace wbary {

namespace {

Json vec_to_json(const Vec& v) {
  Json arr = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) arr.push_back(v(i));
  return arr;
}

Vec vec_from_json(const Json& j) {
  Vec v(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) v(static_cast<Eigen::Index>(i)) = j[i].get<double>();
  return v;
}

Json mat_to_json(const Mat& m) {
  Json rows = Json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

Mat mat_from_json(const Json& j) {
  const std::size_t rows = j.size();
  const std::size_t cols = rows ? j[0].size() : 0;
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t k = 0; k < cols; ++k)
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = j[i][k].get<double>();
  return m;
}

}  // namespace

Json to_json(const Space& space) {
  Json params;
  params["dim"] = space.dim();
  switch (space.kind()) {
    case SpaceKind::sphere: params["circumference"] = space.circumference(); break;
    case SpaceKind::hyperbolic: params["curvature_scale"] = space.curvature_scale(); break;
    case SpaceKind::flat_cylinder: params["circumference"] = space.circumference(); break;
    case SpaceKind::balloon_string:
      params["circumference"] = space.circumference();
      params["string_length"] = space.string_length();
      break;
    default: break;
  }
  return Json{{"kind", to_string(space.kind())}, {"params", params}};
}

Space space_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  const Json& p = j.at("params");
  if (kind == "euclidean") return Space::euclidean(p.at("dim").get<int>());
  if (kind == "sphere")
    return Space::sphere(p.at("dim").get<int>(), p.at("circumference").get<double>());
  if (kind == "hyperbolic")
    return Space::hyperbolic(p.at("dim").get<int>(),
                             p.value("curvature_scale", 1.0));
  if (kind == "flat_cylinder") return Space::flat_cylinder(p.at("circumference").get<double>());
  if (kind == "balloon_string")
    return Space::balloon_string(p.at("circumference").get<double>(),
                                 p.at("string_length").get<double>());
  throw std::invalid_argument("unknown space kind: " + kind);
}

Json to_json(const Point& p) {
  Json j{{"chart", vec_to_json(p.chart())}};
  if (p.tag() != Component::none) j["tag"] = to_string(p.tag());
  return j;
}

Point point_from_json(const Space& space, const Json& j) {
  Vec chart = vec_from_json(j.at("chart"));
  if (space.kind() != SpaceKind::balloon_string) return Point(space, std::move(chart));
  const std::string tag = j.at("tag").get<std::string>();
  return Point(space, tag == "string" ? Component::string : Component::sphere, std::move(chart));
}

Json to_json(const DiscreteMeasure& m) {
  Json atoms = Json::array();
  for (const Point& p : m.atoms()) atoms.push_back(vec_to_json(p.chart()));
  Json j{{"space", to_json(m.space())}, {"atoms", atoms}, {"weights", m.weights()}};
  if (m.space().kind() == SpaceKind::balloon_string) {
    Json tags = Json::array();
    for (const Point& p : m.atoms()) tags.push_back(to_string(p.tag()));
    j["tags"] = tags;
  }
  return j;
}

DiscreteMeasure measure_from_json(const Json& j) {
  const Space space = space_from_json(j.at("space"));
  const Json& atoms = j.at("atoms");
  std::vector<Point> points;
  points.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    Vec chart = vec_from_json(atoms[i]);
    if (space.kind() == SpaceKind::balloon_string) {
      const std::string tag = j.at("tags")[i].get<std::string>();
      points.emplace_back(space, tag == "string" ? Component::string : Component::sphere,
                          std::move(chart));
    } else {
      points.emplace_back(space, std::move(chart));
    }
  }
  std::vector<double> weights = j.at("weights").get<std::vector<double>>();
  return DiscreteMeasure(space, std::move(points), std::move(weights),
                         j.value("renormalize", false));
}

Json to_json(const MeasureEnsemble& ensemble) {
  Json entries = Json::array();
  for (const auto& e : ensemble.entries())
    entries.push_back(Json{{"weight", e.weight}, {"measure", to_json(e.measure)}});
  return Json{{"entries", entries}};
}

MeasureEnsemble ensemble_from_json(const Json& j) {
  std::vector<MeasureEnsemble::Entry> entries;
  for (const Json& e : j.at("entries"))
    entries.push_back({e.at("weight").get<double>(), measure_from_json(e.at("measure"))});
  return MeasureEnsemble(std::move(entries), j.value("renormalize", false));
}

Json to_json(const Isometry& g) {
  switch (g.space().kind()) {
    case SpaceKind::euclidean:
      return Json{{"kind", "euclidean"},
                  {"matrix", mat_to_json(g.linear())},
                  {"translation", vec_to_json(g.translation())}};
    case SpaceKind::sphere: return Json{{"kind", "sphere"}, {"matrix", mat_to_json(g.linear())}};
    case SpaceKind::hyperbolic:
      return Json{{"kind", "hyperbolic"}, {"matrix", mat_to_json(g.linear())}};
    case SpaceKind::flat_cylinder:
      return Json{{"kind", "flat_cylinder"},
                  {"axial_reflect", g.linear()(0, 0) < 0.0},
                  {"axial_shift", g.translation()(0)},
                  {"angular_reflect", g.linear()(1, 1) < 0.0},
                  {"angular_shift", g.translation()(1)}};
    case SpaceKind::balloon_string:
      return Json{{"kind", "balloon_string"}, {"matrix", mat_to_json(g.linear())}};
  }
  throw std::invalid_argument("unknown space kind");
}

Isometry isometry_from_json(const Space& space, const Json& j) {
  switch (space.kind()) {
    case SpaceKind::euclidean:
      return Isometry::euclidean(space, mat_from_json(j.at("matrix")),
                                 vec_from_json(j.at("translation")));
    case SpaceKind::sphere: return Isometry::sphere_rotation(space, mat_from_json(j.at("matrix")));
    case SpaceKind::hyperbolic: return Isometry::lorentz(space, mat_from_json(j.at("matrix")));
    case SpaceKind::flat_cylinder:
      return Isometry::cylinder(space, j.value("axial_reflect", false),
                                j.value("axial_shift", 0.0), j.value("angular_reflect", false),
                                j.value("angular_shift", 0.0));
    case SpaceKind::balloon_string:
      return Isometry::balloon_rotation(space, mat_from_json(j.at("matrix")));
  }
  throw std::invalid_argument("unknown space kind");
}

Json group_to_json(const IsometryGroup& group) {
  Json generators = Json::array();
  for (std::size_t i = 1; i < group.size(); ++i) generators.push_back(to_json(group.element(i)));
  return Json{{"space", to_json(group.space())},
              {"generators", generators},
              {"max_elements", group.size()}};
}

IsometryGroup group_from_json(const Json& j) {
  const Space space = space_from_json(j.at("space"));
  std::vector<Isometry> generators;
  for (const Json& g : j.at("generators")) generators.push_back(isometry_from_json(space, g));
  return IsometryGroup::from_generators(space, std::move(generators),
                                        j.value("max_elements", std::size_t{256}));
}

Json to_json(const Coupling& c) {
  Json entries = Json::array();
  for (const auto& e : c.entries())
    entries.push_back(Json{{"i", e.i}, {"j", e.j}, {"mass", e.mass}});
  return Json{{"source", to_json(c.source())},
              {"target", to_json(c.target())},
              {"entries", entries},
              {"cost", c.cost()}};
}

Json to_json(const BarycenterResult& r) {
  return Json{{"point", to_json(r.point)},
              {"value", r.value},
              {"method", to_string(r.method)},
              {"iterations", r.iterations},
              {"residual", r.residual},
              {"multiple_minima", r.multiple_minima}};
}

Json to_json(const EnsembleBarycenterResult& r) {
  return Json{{"measure", to_json(r.measure)},
              {"objective", r.objective},
              {"iterations", r.iterations},
              {"history", r.history},
              {"zero_sum_residual", r.zero_sum_residual},
              {"warnings", r.warnings}};
}

Json to_json(const JensenReport& r) {
  return Json{{"var_barycenter", r.var_barycenter},
              {"mean_variance", r.mean_variance},
              {"linear_variance", r.linear_variance},
              {"jensen_gap", r.jensen_gap},
              {"linear_gap", r.linear_gap},
              {"npc_jensen_holds", r.npc_jensen_holds},
              {"linear_jensen_holds", r.linear_jensen_holds}};
}

Json to_json(const SandwichReport& r) {
  return Json{{"var_w", r.var_w},
              {"var_mu", r.var_mu},
              {"var_l2", r.var_l2},
              {"left_holds", r.left_holds},
              {"right_holds", r.right_holds},
              {"left_asserted", r.left_asserted},
              {"warnings", r.warnings}};
}

Json to_json(const MeasurePath& path) {
  Json steps = Json::array();
  for (std::size_t k = 0; k < path.grid.size(); ++k)
    steps.push_back(Json{{"t", path.grid[k]}, {"measure", to_json(path.measures[k])}});
  return Json{{"kind", to_string(path.kind)}, {"steps", steps}};
}

std::string path_to_csv(const MeasurePath& path) {
  std::ostringstream out;
  out.precision(17);
  out << "t,atom,weight,tag,c0,c1,c2\n";
  for (std::size_t k = 0; k < path.grid.size(); ++k) {
    const DiscreteMeasure& m = path.measures[k];
    for (std::size_t i = 0; i < m.size(); ++i) {
      out << path.grid[k] << ',' << i << ',' << m.weight(i) << ',' << to_string(m.atom(i).tag());
      const Vec& c = m.atom(i).chart();
      for (int d = 0; d < 3; ++d) {
        out << ',';
        if (d < c.size()) out << c(d);
      }
      out << '\n';
    }
  }
  return out.str();
}

std::string history_to_csv(const std::vector<double>& history) {
  std::ostringstream out;
  out.precision(17);
  out << "iteration,objective\n";
  for (std::size_t i = 0; i < history.size(); ++i) out << i << ',' << history[i] << '\n';
  return out.str();
}

Space space_from_shorthand(const std::string& text) {
  if (text == "r1") return Space::euclidean(1);
  if (text == "r2") return Space::euclidean(2);
  if (text == "r3") return Space::euclidean(3);
  if (text == "h2") return Space::hyperbolic(2);
  if (text == "h3") return Space::hyperbolic(3);
  std::vector<std::string> parts;
  std::stringstream stream(text);
  std::string item;
  while (std::getline(stream, item, ':')) parts.push_back(item);
  if (!parts.empty()) {
    if (parts[0] == "sphere" && parts.size() >= 2)
      return Space::sphere(parts.size() > 2 ? std::stoi(parts[2]) : 2, std::stod(parts[1]));
    if (parts[0] == "cylinder" && parts.size() == 2)
      return Space::flat_cylinder(std::stod(parts[1]));
    if (parts[0] == "balloon" && parts.size() == 3)
      return Space::balloon_string(std::stod(parts[1]), std::stod(parts[2]));
  }
  throw std::invalid_argument("unrecognized space shorthand: " + text);
}

}  // namespace wbary
