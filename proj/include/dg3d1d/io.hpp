#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "dg3d1d/system.hpp"

namespace dg3d1d {

/// Reads a vessel network:
/// {"vertices": [{"id", "x", "y", "z"}], "edges": [{"v0", "v1", "radius", "xi", "cells"}]}.
/// "xi", "cells" and "area" are optional per edge; "z" defaults to 0. Throws
/// InvalidArgument with the JSON path of the offending field.
VesselGraph read_network(const std::string& path, double default_xi = 1.0);
VesselGraph parse_network(const std::string& text, double default_xi = 1.0);
std::string network_to_json(const VesselGraph& graph);

/// Parsed legacy VTK unstructured grid (only what our writers emit).
struct VtkData {
  std::string title;
  std::vector<Vec3> points;
  std::vector<std::vector<Index>> cells;
  std::vector<int> cell_types;
  std::map<std::string, std::vector<double>> point_data;
};

/// Tetrahedra (type 10) with four private points per cell carrying the DG
/// values.
void write_vtk_3d(const std::string& path, const DgSpace3& space, std::span<const double> u,
                  const std::string& name = "u");
/// One polyline per edge cell: points at the Lagrange nodes, lines (type 3)
/// between consecutive nodes.
void write_vtk_1d(const std::string& path, const DgSpace1& space, std::span<const double> u,
                  const std::string& name = "u_hat");
VtkData read_vtk(const std::string& path);

/// Flat key=value configuration; '#' starts a comment. Returns pairs in file
/// order. Throws InvalidArgument on malformed lines, with the line number.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

void write_text_file(const std::string& path, const std::string& text);

/// Effective configuration of one CLI run. Every field maps to a flag of the
/// same name with '_' spelled '-'.
struct RunConfig {
  std::string command;
  std::string output = "out";
  // discretization
  int eps1 = -1;
  int eps2 = -1;
  double sigma_omega = 30.0;
  double sigma_lambda = 30.0;
  double sigma_v = 10.0;
  int circle_points = 16;
  int k2 = 1;
  std::string average_sampling = "gauss";
  double xi = 1.0;
  // solver
  double tol = 1e-10;
  int max_iter = 20000;
  // studies
  std::string levels;  ///< comma list; meaning depends on the command
  int mesh_n = 16;
  double h_lambda = 0.0;  ///< 0: derived from the 3D mesh size
  double tau = 0.05;
  double final_time = 0.5;
  std::string steps = "5,10,20";
  // solve
  std::string network;
  double f = 0.0;
  double f_hat = 1.0;
  double margin = 0.1;
  std::string box;  ///< "x0,y0,z0,x1,y1,z1"; empty: bounding box plus margin
  std::uint64_t seed = 0;
  bool write_matrix = false;

  /// Throws InvalidArgument naming the offending field.
  void validate() const;
  [[nodiscard]] SystemOptions system_options() const;
  /// Pretty-printed JSON object of all fields.
  [[nodiscard]] std::string to_json() const;
};

std::vector<int> parse_int_list(const std::string& text, const std::string& what);
std::vector<double> parse_double_list(const std::string& text, const std::string& what);

}  // namespace dg3d1d
