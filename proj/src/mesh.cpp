#include "qcolloid/mesh.hpp"

#include <array>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "qcolloid/constants.hpp"
#include "qcolloid/errors.hpp"
#include "qcolloid/numerics.hpp"

namespace qcolloid {

namespace {

Eigen::Vector3d tri_cross(const TriMesh& mesh, int f) {
  const auto& t = mesh.F[f];
  return (mesh.V[t[1]] - mesh.V[t[0]]).cross(mesh.V[t[2]] - mesh.V[t[0]]);
}

double signed_volume(const TriMesh& mesh) {
  NeumaierSum acc;
  for (size_t f = 0; f < mesh.F.size(); ++f) {
    const auto& t = mesh.F[f];
    acc.add(mesh.V[t[0]].dot(mesh.V[t[1]].cross(mesh.V[t[2]])) / 6.0);
  }
  return acc.value();
}

}  // namespace

void validate_mesh(const TriMesh& mesh) {
  if (mesh.V.size() < 4 || mesh.F.size() < 4)
    throw InputError("mesh: too few vertices or triangles");
  int nv = static_cast<int>(mesh.V.size());
  std::map<std::pair<int, int>, int> directed;
  for (size_t f = 0; f < mesh.F.size(); ++f) {
    const auto& t = mesh.F[f];
    for (int k = 0; k < 3; ++k) {
      if (t[k] < 0 || t[k] >= nv)
        throw InputError("mesh: vertex index out of range");
    }
    if (t[0] == t[1] || t[1] == t[2] || t[0] == t[2])
      throw InputError("mesh: degenerate triangle indices");
    if (0.5 * tri_cross(mesh, static_cast<int>(f)).norm() < 1e-12)
      throw InputError("mesh: triangle area below 1e-12");
    for (int k = 0; k < 3; ++k) {
      auto e = std::make_pair(t[k], t[(k + 1) % 3]);
      if (++directed[e] > 1)
        throw InputError("mesh: repeated directed edge (inconsistent orientation)");
    }
  }
  for (const auto& [e, cnt] : directed) {
    auto rev = directed.find(std::make_pair(e.second, e.first));
    if (rev == directed.end())
      throw InputError("mesh: open edge (surface not closed)");
    (void)cnt;
  }
  if (signed_volume(mesh) <= 0.0)
    throw InputError("mesh: normals do not point outward");
}

namespace {

std::string next_content_line(std::istream& in) {
  std::string line;
  while (std::getline(in, line)) {
    size_t pos = line.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) continue;
    if (line[pos] == '#') continue;
    return line;
  }
  return {};
}

}  // namespace

TriMesh parse_off(std::istream& in) {
  std::string header = next_content_line(in);
  if (header.substr(0, 3) != "OFF") throw InputError("OFF: missing header");
  std::istringstream counts(next_content_line(in));
  long nv = 0, nf = 0, ne = 0;
  if (!(counts >> nv >> nf)) throw InputError("OFF: bad element counts");
  counts >> ne;
  if (nv < 0 || nf < 0) throw InputError("OFF: bad element counts");
  TriMesh mesh;
  mesh.V.reserve(nv);
  for (long i = 0; i < nv; ++i) {
    std::istringstream row(next_content_line(in));
    Eigen::Vector3d p;
    if (!(row >> p[0] >> p[1] >> p[2])) throw InputError("OFF: bad vertex row");
    mesh.V.push_back(p);
  }
  mesh.F.reserve(nf);
  for (long i = 0; i < nf; ++i) {
    std::istringstream row(next_content_line(in));
    int deg = 0;
    if (!(row >> deg)) throw InputError("OFF: bad face row");
    if (deg != 3) throw InputError("OFF: only triangles are supported");
    Eigen::Vector3i t;
    if (!(row >> t[0] >> t[1] >> t[2])) throw InputError("OFF: bad face row");
    mesh.F.push_back(t);
  }
  return mesh;
}

TriMesh parse_obj(std::istream& in) {
  TriMesh mesh;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string tag;
    if (!(row >> tag)) continue;
    if (tag == "v") {
      Eigen::Vector3d p;
      if (!(row >> p[0] >> p[1] >> p[2])) throw InputError("OBJ: bad vertex");
      mesh.V.push_back(p);
    } else if (tag == "f") {
      std::vector<int> idx;
      std::string tok;
      while (row >> tok) {
        // "i", "i/j", "i/j/k" forms; only the position index is used.
        long v = std::strtol(tok.c_str(), nullptr, 10);
        if (v <= 0) throw InputError("OBJ: only positive indices supported");
        idx.push_back(static_cast<int>(v - 1));
      }
      if (idx.size() != 3) throw InputError("OBJ: only triangles are supported");
      mesh.F.emplace_back(idx[0], idx[1], idx[2]);
    }
  }
  return mesh;
}

TriMesh load_mesh(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("load_mesh: cannot open " + path);
  TriMesh mesh;
  auto dot = path.find_last_of('.');
  std::string ext = dot == std::string::npos ? "" : path.substr(dot + 1);
  if (ext == "off" || ext == "OFF")
    mesh = parse_off(in);
  else if (ext == "obj" || ext == "OBJ")
    mesh = parse_obj(in);
  else
    throw InputError("load_mesh: unsupported extension ." + ext);
  if (signed_volume(mesh) < 0.0)
    for (auto& t : mesh.F) std::swap(t[1], t[2]);
  validate_mesh(mesh);
  return mesh;
}

double area(const TriMesh& mesh) {
  NeumaierSum acc;
  for (size_t f = 0; f < mesh.F.size(); ++f)
    acc.add(0.5 * tri_cross(mesh, static_cast<int>(f)).norm());
  return acc.value();
}

int euler_characteristic(const TriMesh& mesh) {
  std::map<std::pair<int, int>, bool> edges;
  for (const auto& t : mesh.F)
    for (int k = 0; k < 3; ++k)
      edges[std::minmax(t[k], t[(k + 1) % 3])] = true;
  return static_cast<int>(mesh.V.size()) - static_cast<int>(edges.size()) +
         static_cast<int>(mesh.F.size());
}

std::vector<QuadratureSample> sample(const TriMesh& mesh) {
  std::vector<QuadratureSample> out;
  out.reserve(3 * mesh.F.size());
  for (size_t f = 0; f < mesh.F.size(); ++f) {
    const auto& t = mesh.F[f];
    Eigen::Vector3d cr = tri_cross(mesh, static_cast<int>(f));
    double A = 0.5 * cr.norm();
    Eigen::Vector3d nu = cr.normalized();
    const Eigen::Vector3d &a = mesh.V[t[0]], &b = mesh.V[t[1]],
                          &c = mesh.V[t[2]];
    out.push_back({0.5 * (a + b), nu, A / 3.0});
    out.push_back({0.5 * (b + c), nu, A / 3.0});
    out.push_back({0.5 * (c + a), nu, A / 3.0});
  }
  return out;
}

double mesh_max_curvature_estimate(const TriMesh& mesh) {
  std::map<std::pair<int, int>, int> owner;
  double kmax = 0.0;
  for (size_t f = 0; f < mesh.F.size(); ++f) {
    const auto& t = mesh.F[f];
    for (int k = 0; k < 3; ++k) {
      auto e = std::minmax(t[k], t[(k + 1) % 3]);
      auto it = owner.find(e);
      if (it == owner.end()) {
        owner[e] = static_cast<int>(f);
        continue;
      }
      Eigen::Vector3d n1 = tri_cross(mesh, it->second).normalized();
      Eigen::Vector3d n2 = tri_cross(mesh, static_cast<int>(f)).normalized();
      double angle = std::atan2(n1.cross(n2).norm(), n1.dot(n2));
      double elen = (mesh.V[e.first] - mesh.V[e.second]).norm();
      if (elen > 0.0) kmax = std::max(kmax, angle / elen);
    }
  }
  return kmax;
}

namespace {

TriMesh tessellate_revolution(const RevolutionSurface& surf, int resolution) {
  int rows_per_part = std::max(2, resolution / std::max<int>(1, surf.parts.size()));
  int ntheta = 2 * resolution;

  // Profile row stations (shared seams between parts).
  std::vector<Eigen::Vector2d> stations;
  for (size_t p = 0; p < surf.parts.size(); ++p) {
    int start = (p == 0) ? 0 : 1;
    for (int i = start; i <= rows_per_part; ++i)
      stations.push_back(surf.parts[p].point(double(i) / rows_per_part));
  }
  int nrows = static_cast<int>(stations.size());

  TriMesh mesh;
  std::vector<std::vector<int>> ring(nrows);
  int wrap_to = -1;
  for (int i = 0; i < nrows; ++i) {
    if (surf.closed && i == nrows - 1) {
      ring[i] = ring[0];
      wrap_to = 0;
      continue;
    }
    if (!surf.closed && stations[i][0] < 1e-9) {
      int vid = static_cast<int>(mesh.V.size());
      mesh.V.emplace_back(0.0, 0.0, stations[i][1]);
      ring[i] = std::vector<int>(ntheta, vid);
      continue;
    }
    ring[i].resize(ntheta);
    for (int j = 0; j < ntheta; ++j) {
      double theta = 2.0 * kPi * j / ntheta;
      ring[i][j] = static_cast<int>(mesh.V.size());
      mesh.V.emplace_back(stations[i][0] * std::cos(theta),
                          stations[i][0] * std::sin(theta), stations[i][1]);
    }
  }
  (void)wrap_to;

  for (int i = 0; i + 1 < nrows; ++i) {
    for (int j = 0; j < ntheta; ++j) {
      int jn = (j + 1) % ntheta;
      int a = ring[i][j], b = ring[i][jn];
      int c = ring[i + 1][j], d = ring[i + 1][jn];
      if (a == b) {
        if (c != d) mesh.F.emplace_back(a, c, d);
      } else if (c == d) {
        mesh.F.emplace_back(a, c, b);
      } else {
        mesh.F.emplace_back(a, c, b);
        mesh.F.emplace_back(b, c, d);
      }
    }
  }
  if (signed_volume(mesh) < 0.0)
    for (auto& t : mesh.F) std::swap(t[1], t[2]);
  return mesh;
}

TriMesh tessellate_cube(double R, int resolution) {
  TriMesh mesh;
  int n = resolution;
  std::map<std::array<int, 3>, int> vid;
  auto vertex = [&](int i, int j, int k) {
    std::array<int, 3> key{i, j, k};
    auto it = vid.find(key);
    if (it != vid.end()) return it->second;
    int id = static_cast<int>(mesh.V.size());
    mesh.V.emplace_back(-R + 2.0 * R * i / n, -R + 2.0 * R * j / n,
                        -R + 2.0 * R * k / n);
    vid[key] = id;
    return id;
  };
  auto emit_face = [&](int axis, int level, bool flip) {
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        std::array<int, 3> p00{}, p10{}, p01{}, p11{};
        int u = (axis + 1) % 3, v = (axis + 2) % 3;
        auto fill = [&](std::array<int, 3>& p, int a, int b) {
          p[axis] = level;
          p[u] = a;
          p[v] = b;
        };
        fill(p00, i, j);
        fill(p10, i + 1, j);
        fill(p01, i, j + 1);
        fill(p11, i + 1, j + 1);
        int a = vertex(p00[0], p00[1], p00[2]);
        int b = vertex(p10[0], p10[1], p10[2]);
        int c = vertex(p01[0], p01[1], p01[2]);
        int d = vertex(p11[0], p11[1], p11[2]);
        if (flip) {
          mesh.F.emplace_back(a, c, b);
          mesh.F.emplace_back(b, c, d);
        } else {
          mesh.F.emplace_back(a, b, c);
          mesh.F.emplace_back(b, d, c);
        }
      }
    }
  };
  for (int axis = 0; axis < 3; ++axis) {
    emit_face(axis, n, false);
    emit_face(axis, 0, true);
  }
  if (signed_volume(mesh) < 0.0)
    for (auto& t : mesh.F) std::swap(t[1], t[2]);
  return mesh;
}

}  // namespace

TriMesh tessellate(const AnalyticShape& shape, int resolution) {
  validate_shape(shape);
  if (resolution < 8) throw InputError("tessellate: resolution must be >= 8");
  if (const Cube* s = std::get_if<Cube>(&shape))
    return tessellate_cube(s->R, resolution);
  if (const RoundedCube* s = std::get_if<RoundedCube>(&shape)) {
    TriMesh mesh = tessellate_cube(s->R, resolution);
    for (auto& v : mesh.V) v = closest_surface_point(shape, v).p;
    if (signed_volume(mesh) < 0.0)
      for (auto& t : mesh.F) std::swap(t[1], t[2]);
    return mesh;
  }
  return tessellate_revolution(revolution_profile(shape), resolution);
}

SurfacePoint closest_surface_point(const TriMesh& mesh,
                                   const Eigen::Vector3d& x) {
  double best = std::numeric_limits<double>::infinity();
  SurfacePoint out{Eigen::Vector3d::Zero(), Eigen::Vector3d::UnitZ()};
  for (size_t f = 0; f < mesh.F.size(); ++f) {
    const auto& t = mesh.F[f];
    const Eigen::Vector3d &a = mesh.V[t[0]], &b = mesh.V[t[1]],
                          &c = mesh.V[t[2]];
    // Clamped barycentric projection onto the triangle.
    Eigen::Vector3d ab = b - a, ac = c - a, ap = x - a;
    double d1 = ab.dot(ap), d2 = ac.dot(ap);
    Eigen::Vector3d q;
    if (d1 <= 0.0 && d2 <= 0.0) {
      q = a;
    } else {
      Eigen::Vector3d bp = x - b;
      double d3 = ab.dot(bp), d4 = ac.dot(bp);
      if (d3 >= 0.0 && d4 <= d3) {
        q = b;
      } else {
        Eigen::Vector3d cp = x - c;
        double d5 = ab.dot(cp), d6 = ac.dot(cp);
        if (d6 >= 0.0 && d5 <= d6) {
          q = c;
        } else {
          double vc = d1 * d4 - d3 * d2;
          double vb = d5 * d2 - d1 * d6;
          double va = d3 * d6 - d5 * d4;
          if (vc <= 0.0 && d1 >= 0.0 && d3 <= 0.0) {
            q = a + ab * (d1 / (d1 - d3));
          } else if (vb <= 0.0 && d2 >= 0.0 && d6 <= 0.0) {
            q = a + ac * (d2 / (d2 - d6));
          } else if (va <= 0.0 && (d4 - d3) >= 0.0 && (d5 - d6) >= 0.0) {
            q = b + (c - b) * ((d4 - d3) / ((d4 - d3) + (d5 - d6)));
          } else {
            double denom = 1.0 / (va + vb + vc);
            q = a + ab * (vb * denom) + ac * (vc * denom);
          }
        }
      }
    }
    double d = (x - q).squaredNorm();
    if (d < best) {
      best = d;
      out.p = q;
      out.nu = tri_cross(mesh, static_cast<int>(f)).normalized();
    }
  }
  return out;
}

}  // namespace qcolloid
