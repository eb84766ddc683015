#pragma once

#include <stdexcept>
#include <string>

namespace dg3d1d {

/// Bad user-facing input: parameters, configuration, file schema.
class InvalidArgument : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Topologically broken mesh (non-manifold faces, degenerate cells).
class MeshError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A query point or a vessel cylinder falls outside the 3D box.
class GeometryError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dg3d1d
