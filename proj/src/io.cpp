#include "dg3d1d/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "dg3d1d/errors.hpp"

namespace dg3d1d {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw InvalidArgument("network file: " + path + ": " + what);
}

const json& require(const json& obj, const std::string& key, const std::string& path) {
  if (!obj.is_object()) schema_error(path, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) schema_error(path + "." + key, "missing");
  return *it;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) schema_error(path, "expected a number");
  const double d = v.get<double>();
  if (!std::isfinite(d)) schema_error(path, "must be finite");
  return d;
}

Index integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) schema_error(path, "expected an integer");
  return v.get<Index>();
}

}  // namespace

VesselGraph parse_network(const std::string& text, double default_xi) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidArgument(std::string("network file: not valid JSON: ") + e.what());
  }
  const json& jv = require(doc, "vertices", "$");
  const json& je = require(doc, "edges", "$");
  if (!jv.is_array() || jv.empty()) schema_error("vertices", "expected a non-empty array");
  if (!je.is_array() || je.empty()) schema_error("edges", "expected a non-empty array");

  const auto nv = static_cast<Index>(jv.size());
  std::vector<Vec3> vertices(static_cast<std::size_t>(nv));
  std::vector<bool> seen(static_cast<std::size_t>(nv), false);
  for (std::size_t i = 0; i < jv.size(); ++i) {
    const std::string path = "vertices[" + std::to_string(i) + "]";
    const Index id = integer(require(jv[i], "id", path), path + ".id");
    if (id < 0 || id >= nv)
      schema_error(path + ".id", "id " + std::to_string(id) + " outside 0.." + std::to_string(nv - 1));
    if (seen[id]) schema_error(path + ".id", "duplicate id " + std::to_string(id));
    seen[id] = true;
    const double z = jv[i].contains("z") ? number(jv[i]["z"], path + ".z") : 0.0;
    vertices[id] = Vec3(number(require(jv[i], "x", path), path + ".x"),
                        number(require(jv[i], "y", path), path + ".y"), z);
  }

  std::vector<VesselEdge> edges;
  for (std::size_t i = 0; i < je.size(); ++i) {
    const std::string path = "edges[" + std::to_string(i) + "]";
    VesselEdge e{};
    e.v_in = integer(require(je[i], "v0", path), path + ".v0");
    e.v_out = integer(require(je[i], "v1", path), path + ".v1");
    if (e.v_in < 0 || e.v_in >= nv) schema_error(path + ".v0", "unknown vertex id " + std::to_string(e.v_in));
    if (e.v_out < 0 || e.v_out >= nv) schema_error(path + ".v1", "unknown vertex id " + std::to_string(e.v_out));
    e.radius = number(require(je[i], "radius", path), path + ".radius");
    if (!(e.radius > 0.0)) schema_error(path + ".radius", "must be positive");
    e.xi = je[i].contains("xi") ? number(je[i]["xi"], path + ".xi") : default_xi;
    if (e.xi < 0.0) schema_error(path + ".xi", "must be non-negative");
    e.cells = je[i].contains("cells") ? static_cast<int>(integer(je[i]["cells"], path + ".cells")) : 0;
    if (e.cells < 0) schema_error(path + ".cells", "must be non-negative");
    if (je[i].contains("area")) {
      const double a = number(je[i]["area"], path + ".area");
      if (!(a > 0.0)) schema_error(path + ".area", "must be positive");
      e.area_override = a;
    }
    edges.push_back(e);
  }
  return VesselGraph(std::move(vertices), std::move(edges));
}

VesselGraph read_network(const std::string& path, double default_xi) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open network file " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_network(buf.str(), default_xi);
}

std::string network_to_json(const VesselGraph& graph) {
  json doc;
  doc["vertices"] = json::array();
  for (Index v = 0; v < graph.num_vertices(); ++v) {
    const Vec3& p = graph.vertices()[v];
    doc["vertices"].push_back({{"id", v}, {"x", p.x()}, {"y", p.y()}, {"z", p.z()}});
  }
  doc["edges"] = json::array();
  for (const auto& e : graph.edges()) {
    json je{{"v0", e.v_in}, {"v1", e.v_out}, {"radius", e.radius}, {"xi", e.xi}};
    if (e.cells > 0) je["cells"] = e.cells;
    if (e.area_override) je["area"] = *e.area_override;
    doc["edges"].push_back(je);
  }
  return doc.dump(2) + "\n";
}

namespace {

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_header(std::ostream& out, const std::string& title) {
  out << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
}

void write_points(std::ostream& out, const std::vector<Vec3>& pts) {
  out << "POINTS " << pts.size() << " double\n";
  for (const auto& p : pts) out << fmt(p.x()) << ' ' << fmt(p.y()) << ' ' << fmt(p.z()) << '\n';
}

void write_scalars(std::ostream& out, const std::string& name, const std::vector<double>& v) {
  out << "POINT_DATA " << v.size() << "\nSCALARS " << name << " double 1\nLOOKUP_TABLE default\n";
  for (const double x : v) out << fmt(x) << '\n';
}

}  // namespace

void write_vtk_3d(const std::string& path, const DgSpace3& space, std::span<const double> u,
                  const std::string& name) {
  if (static_cast<Index>(u.size()) != space.num_dofs())
    throw InvalidArgument("3D field has " + std::to_string(u.size()) + " values, expected " +
                          std::to_string(space.num_dofs()));
  const Mesh3& mesh = space.mesh();
  std::vector<Vec3> pts;
  std::vector<double> vals;
  for (Index c = 0; c < mesh.num_cells(); ++c)
    for (int a = 0; a < 4; ++a) {
      pts.push_back(mesh.vertices[mesh.cells[c][a]]);
      vals.push_back(u[space.dof(c, a)]);
    }
  auto out = open_output(path);
  write_header(out, "dg3d1d 3D field");
  write_points(out, pts);
  const Index n = mesh.num_cells();
  out << "CELLS " << n << ' ' << 5 * n << '\n';
  for (Index c = 0; c < n; ++c)
    out << "4 " << 4 * c << ' ' << 4 * c + 1 << ' ' << 4 * c + 2 << ' ' << 4 * c + 3 << '\n';
  out << "CELL_TYPES " << n << '\n';
  for (Index c = 0; c < n; ++c) out << "10\n";
  write_scalars(out, name, vals);
  if (!out) throw std::runtime_error("error while writing " + path);
}

void write_vtk_1d(const std::string& path, const DgSpace1& space, std::span<const double> u,
                  const std::string& name) {
  if (static_cast<Index>(u.size()) != space.num_dofs())
    throw InvalidArgument("1D field has " + std::to_string(u.size()) + " values, expected " +
                          std::to_string(space.num_dofs()));
  const int k = space.degree();
  std::vector<Vec3> pts;
  std::vector<double> vals;
  std::vector<std::array<Index, 2>> lines;
  for (const auto& mesh : space.meshes())
    for (int c = 0; c < mesh.cells; ++c) {
      const auto first = static_cast<Index>(pts.size());
      for (int a = 0; a <= k; ++a) {
        pts.push_back(space.point(mesh.edge, (c + static_cast<double>(a) / k) * mesh.h()));
        vals.push_back(u[space.dof(mesh.edge, c, a)]);
        if (a > 0) lines.push_back({first + a - 1, first + a});
      }
    }
  auto out = open_output(path);
  write_header(out, "dg3d1d 1D field");
  write_points(out, pts);
  out << "CELLS " << lines.size() << ' ' << 3 * lines.size() << '\n';
  for (const auto& l : lines) out << "2 " << l[0] << ' ' << l[1] << '\n';
  out << "CELL_TYPES " << lines.size() << '\n';
  for (std::size_t i = 0; i < lines.size(); ++i) out << "3\n";
  write_scalars(out, name, vals);
  if (!out) throw std::runtime_error("error while writing " + path);
}

VtkData read_vtk(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  auto fail = [&](const std::string& what) -> void {
    throw std::runtime_error(path + ": " + what);
  };
  VtkData d;
  std::string line;
  std::getline(in, line);
  if (line.rfind("# vtk DataFile", 0) != 0) fail("missing VTK header");
  std::getline(in, d.title);
  std::getline(in, line);
  if (line != "ASCII") fail("only ASCII files are supported");
  std::getline(in, line);
  if (line != "DATASET UNSTRUCTURED_GRID") fail("only unstructured grids are supported");
  std::string key;
  while (in >> key) {
    if (key == "POINTS") {
      std::size_t n;
      std::string type;
      in >> n >> type;
      d.points.resize(n);
      for (auto& p : d.points) in >> p.x() >> p.y() >> p.z();
    } else if (key == "CELLS") {
      std::size_t n, total;
      in >> n >> total;
      d.cells.resize(n);
      for (auto& c : d.cells) {
        std::size_t m;
        in >> m;
        c.resize(m);
        for (auto& v : c) in >> v;
      }
    } else if (key == "CELL_TYPES") {
      std::size_t n;
      in >> n;
      d.cell_types.resize(n);
      for (auto& t : d.cell_types) in >> t;
    } else if (key == "POINT_DATA") {
      std::size_t n;
      in >> n;
      std::string scalars, name, type, lookup, table;
      in >> scalars >> name >> type;
      std::getline(in, line);  // optional component count
      in >> lookup >> table;
      if (scalars != "SCALARS" || lookup != "LOOKUP_TABLE") fail("unsupported point data block");
      auto& v = d.point_data[name];
      v.resize(n);
      for (auto& x : v) {
        std::string tok;
        in >> tok;
        x = std::strtod(tok.c_str(), nullptr);
      }
    } else {
      fail("unsupported section " + key);
    }
    if (!in) fail("truncated section " + key);
  }
  return d;
}

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open config file " + path);
  auto trim = [](std::string s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return std::string();
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
  };
  std::vector<std::pair<std::string, std::string>> out;
  std::string line;
  for (int lineno = 1; std::getline(in, line); ++lineno) {
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
      throw InvalidArgument(path + ":" + std::to_string(lineno) + ": expected key=value");
    out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return out;
}

void write_text_file(const std::string& path, const std::string& text) {
  auto out = open_output(path);
  out << text;
  if (!out) throw std::runtime_error("error while writing " + path);
}

}  // namespace dg3d1d

namespace dg3d1d {

void RunConfig::validate() const {
  auto bad = [](const std::string& field, const std::string& what) {
    throw InvalidArgument("invalid " + field + ": " + what);
  };
  if (eps1 < -1 || eps1 > 1) bad("eps1", "must be -1, 0 or 1");
  if (eps2 < -1 || eps2 > 1) bad("eps2", "must be -1, 0 or 1");
  if (!(sigma_omega > 0.0)) bad("sigma-omega", "must be positive");
  if (!(sigma_lambda > 0.0)) bad("sigma-lambda", "must be positive");
  if (!(sigma_v > 0.0)) bad("sigma-v", "must be positive");
  if (circle_points < 4 || circle_points % 2 != 0) bad("circle-points", "must be even and at least 4");
  if (k2 < 1 || k2 > 2) bad("k2", "must be 1 or 2");
  if (average_sampling != "gauss" && average_sampling != "nodal")
    bad("average-sampling", "must be gauss or nodal");
  if (xi < 0.0) bad("xi", "must be non-negative");
  if (!(tol > 0.0)) bad("tol", "must be positive");
  if (max_iter < 1) bad("max-iter", "must be positive");
  if (mesh_n < 1) bad("mesh-n", "must be positive");
  if (h_lambda < 0.0) bad("h-lambda", "must be non-negative");
  if (!(tau > 0.0)) bad("tau", "must be positive");
  if (!(final_time > 0.0)) bad("final-time", "must be positive");
  if (margin < 0.0) bad("margin", "must be non-negative");
  if (output.empty()) bad("output", "must not be empty");
  if (!box.empty()) {
    const auto b = parse_double_list(box, "box");
    if (b.size() != 6) bad("box", "expected six numbers x0,y0,z0,x1,y1,z1");
    for (int d = 0; d < 3; ++d)
      if (!(b[d + 3] > b[d])) bad("box", "upper corner must exceed lower corner");
  }
}

SystemOptions RunConfig::system_options() const {
  SystemOptions o;
  o.ipdg3.epsilon = eps1;
  o.ipdg3.sigma = sigma_omega;
  o.ipdg1.epsilon = eps2;
  o.ipdg1.sigma_lambda = sigma_lambda;
  o.ipdg1.sigma_v = sigma_v;
  o.degree_1d = k2;
  o.circle_points = circle_points;
  o.average_sampling = average_sampling == "nodal" ? AverageSampling::nodal : AverageSampling::gauss;
  o.cg.tol = tol;
  o.cg.max_iterations = max_iter;
  return o;
}

std::string RunConfig::to_json() const {
  const json j{{"command", command},
               {"output", output},
               {"eps1", eps1},
               {"eps2", eps2},
               {"sigma-omega", sigma_omega},
               {"sigma-lambda", sigma_lambda},
               {"sigma-v", sigma_v},
               {"circle-points", circle_points},
               {"k2", k2},
               {"average-sampling", average_sampling},
               {"xi", xi},
               {"tol", tol},
               {"max-iter", max_iter},
               {"levels", levels},
               {"mesh-n", mesh_n},
               {"h-lambda", h_lambda},
               {"tau", tau},
               {"final-time", final_time},
               {"steps", steps},
               {"network", network},
               {"f", f},
               {"f-hat", f_hat},
               {"margin", margin},
               {"box", box},
               {"seed", seed},
               {"write-matrix", write_matrix}};
  return j.dump(2);
}

namespace {

template <class T>
std::vector<T> parse_list(const std::string& text, const std::string& what) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    std::size_t used = 0;
    T v{};
    try {
      if constexpr (std::is_same_v<T, int>)
        v = std::stoi(tok, &used);
      else
        v = std::stod(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || tok.find_first_not_of(" \t", used) != std::string::npos)
      throw InvalidArgument("invalid " + what + ": '" + tok + "' is not a number");
    out.push_back(v);
  }
  if (out.empty()) throw InvalidArgument("invalid " + what + ": empty list");
  return out;
}

}  // namespace

std::vector<int> parse_int_list(const std::string& text, const std::string& what) {
  return parse_list<int>(text, what);
}

std::vector<double> parse_double_list(const std::string& text, const std::string& what) {
  return parse_list<double>(text, what);
}

}  // namespace dg3d1d
