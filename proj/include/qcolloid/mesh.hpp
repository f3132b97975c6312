#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "qcolloid/surfaces.hpp"

namespace qcolloid {

// Closed oriented triangle mesh; triangles are counterclockwise seen from
// outside, so cross-product normals point outward.
struct TriMesh {
  std::vector<Eigen::Vector3d> V;
  std::vector<Eigen::Vector3i> F;
};

// Edge census: every undirected edge shared by exactly two triangles,
// traversed in opposite directions; indices in range; no triangle area
// below 1e-12; positive enclosed volume. Throws InputError.
void validate_mesh(const TriMesh& mesh);

// OFF or OBJ by file extension (triangles only). The mesh is flipped as a
// whole if its signed volume is negative, then validated.
TriMesh load_mesh(const std::string& path);
TriMesh parse_off(std::istream& in);
TriMesh parse_obj(std::istream& in);

double area(const TriMesh& mesh);

int euler_characteristic(const TriMesh& mesh);

// Per-triangle 3-point rule (edge midpoints, weight A/3 each).
std::vector<QuadratureSample> sample(const TriMesh& mesh);

// Dihedral-angle curvature estimate; advisory only.
double mesh_max_curvature_estimate(const TriMesh& mesh);

// Triangulation of an analytic shape. Revolution shapes use profile rows
// with pole fans; Cube a welded per-face grid; RoundedCube the cube grid
// projected onto the blended surface.
TriMesh tessellate(const AnalyticShape& shape, int resolution);

// Nearest point on the mesh (linear scan; meant for small meshes).
SurfacePoint closest_surface_point(const TriMesh& mesh,
                                   const Eigen::Vector3d& x);

}  // namespace qcolloid
