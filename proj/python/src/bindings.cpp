#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <cmath>

#include "dg3d1d/errors.hpp"
#include "dg3d1d/io.hpp"
#include "dg3d1d/studies.hpp"

namespace py = pybind11;
using namespace dg3d1d;

namespace {

SystemOptions options(double sigma_omega, double sigma_lambda, double sigma_v, int circle_points, double tol) {
  RunConfig c;
  c.sigma_omega = sigma_omega;
  c.sigma_lambda = sigma_lambda;
  c.sigma_v = sigma_v;
  c.circle_points = circle_points;
  c.tol = tol;
  c.validate();
  return c.system_options();
}

py::object maybe(double v) { return std::isnan(v) ? py::none() : py::cast(v); }

py::dict table_dict(const StudyResult& res) {
  py::list rows;
  for (const auto& r : res.table.rows()) {
    py::dict row;
    row["level"] = r.level;
    row["h"] = r.h;
    for (std::size_t i = 0; i < res.table.names().size(); ++i) {
      row[py::str(res.table.names()[i])] = r.errors[i];
      row[py::str(res.table.names()[i] + "_rate")] = maybe(r.rates[i]);
    }
    rows.append(row);
  }
  py::list conservation;
  for (const auto& l : res.levels) conservation.append(l.conservation);
  py::dict out;
  out["columns"] = res.table.names();
  out["rows"] = rows;
  out["conservation"] = conservation;
  out["csv"] = res.table.to_csv();
  return out;
}

}  // namespace

PYBIND11_MODULE(_dg3d1d, m) {
  m.doc() = "DG solver for coupled 3D-1D diffusion";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<GeometryError>(m, "GeometryError", PyExc_RuntimeError);
  py::register_exception<SolverError>(m, "SolverError", PyExc_RuntimeError);

  m.def(
      "mms3d",
      [](const std::vector<int>& levels, double sigma_omega, double sigma_lambda, double sigma_v, int circle_points,
         double tol) {
        StudyResult res({"h1_3d", "l2_3d", "h1_1d", "l2_1d"});
        {
          py::gil_scoped_release release;
          run_mms3d(levels, options(sigma_omega, sigma_lambda, sigma_v, circle_points, tol), res);
        }
        return table_dict(res);
      },
      py::arg("levels") = std::vector<int>{4, 8, 16}, py::arg("sigma_omega") = 30.0, py::arg("sigma_lambda") = 30.0,
      py::arg("sigma_v") = 10.0, py::arg("circle_points") = 16, py::arg("tol") = 1e-10,
      "Single-vessel manufactured solution over box resolutions.");

  m.def(
      "mms_network",
      [](const std::vector<double>& hs, double sigma_lambda, double sigma_v, double tol) {
        StudyResult res({"dg_norm", "flux_residual"});
        {
          py::gil_scoped_release release;
          run_mms_network(hs, options(30.0, sigma_lambda, sigma_v, 16, tol), res);
        }
        return table_dict(res);
      },
      py::arg("hs"), py::arg("sigma_lambda") = 10.0, py::arg("sigma_v") = 10.0, py::arg("tol") = 1e-12,
      "Manufactured solution on the eight-vertex tree over 1D cell sizes.");

  m.def(
      "heat",
      [](int n, double final_time, const std::vector<int>& steps) {
        StudyResult res({"l2_3d", "l2_1d"});
        HeatOptions h;
        h.n = n;
        h.final_time = final_time;
        h.steps = steps;
        {
          py::gil_scoped_release release;
          run_heat(h, SystemOptions{}, res);
        }
        return table_dict(res);
      },
      py::arg("n") = 4, py::arg("final_time") = 0.5, py::arg("steps") = std::vector<int>{5, 10, 20},
      "Backward Euler temporal study; the h column holds tau.");

  m.def(
      "dissipation",
      [](int n, double tau, int steps) { return dissipation_history(n, tau, steps, SystemOptions{}); },
      py::arg("n") = 4, py::arg("tau") = 0.05, py::arg("steps") = 10, "3D L2 norms of a decaying bump, one per step.");

  m.def(
      "read_network",
      [](const std::string& path) {
        const auto g = read_network(path);
        const auto parts = classify_vertices(g);
        py::list verts, edges;
        for (const auto& v : g.vertices()) verts.append(py::make_tuple(v.x(), v.y(), v.z()));
        for (const auto& e : g.edges()) {
          py::dict d;
          d["v0"] = e.v_in;
          d["v1"] = e.v_out;
          d["radius"] = e.radius;
          d["xi"] = e.xi;
          edges.append(d);
        }
        py::dict out;
        out["vertices"] = verts;
        out["edges"] = edges;
        out["boundary"] = parts.boundary;
        out["bifurcations"] = parts.bifurcations;
        return out;
      },
      py::arg("path"), "Parse a network JSON file and classify its vertices.");
}
