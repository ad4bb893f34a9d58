#include "gasketbvp/mesh.hpp"

#include <Eigen/Sparse>
#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <map>
#include <stdexcept>

namespace gasketbvp {

namespace {

constexpr int kMaxLevel = 12;

const int Q[3][2] = {{0, 2}, {-1, 0}, {1, 0}};

struct RawMesh {
  int level;
  std::vector<std::array<std::array<int, 2>, 3>> cell_corners;
};

GasketMesh canonicalize(const RawMesh& raw) {
  GasketMesh m;
  m.level = raw.level;
  std::vector<std::array<int, 2>> pts;
  for (const auto& c : raw.cell_corners)
    for (const auto& p : c) pts.push_back(p);
  std::sort(pts.begin(), pts.end(), [](const auto& a, const auto& b) {
    return std::pair(-a[1], a[0]) < std::pair(-b[1], b[0]);
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  m.coords = pts;
  m.coord_index.reserve(pts.size() * 2);
  for (int i = 0; i < static_cast<int>(pts.size()); ++i)
    m.coord_index.emplace(GasketMesh::key(pts[i][0], pts[i][1]), i);
  m.cells.reserve(raw.cell_corners.size());
  m.adjacency.assign(pts.size(), {});
  for (const auto& c : raw.cell_corners) {
    std::array<int, 3> ids;
    for (int j = 0; j < 3; ++j)
      ids[j] = m.coord_index.at(GasketMesh::key(c[j][0], c[j][1]));
    m.cells.push_back(ids);
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        m.adjacency[static_cast<size_t>(ids[a])].push_back(ids[b]);
        m.adjacency[static_cast<size_t>(ids[b])].push_back(ids[a]);
      }
  }
  for (auto& nbrs : m.adjacency) std::sort(nbrs.begin(), nbrs.end());
  return m;
}

RawMesh subdivide(const GasketMesh& mesh) {
  RawMesh raw;
  raw.level = mesh.level + 1;
  raw.cell_corners.reserve(mesh.cells.size() * 3);
  for (const auto& cell : mesh.cells) {
    std::array<std::array<int, 2>, 3> p;
    for (int j = 0; j < 3; ++j) {
      const auto& c = mesh.coords[static_cast<size_t>(cell[j])];
      p[j] = {2 * c[0], 2 * c[1]};
    }
    for (int j = 0; j < 3; ++j) {
      std::array<std::array<int, 2>, 3> child;
      for (int i = 0; i < 3; ++i)
        child[i] = (i == j) ? p[j]
                            : std::array<int, 2>{(p[j][0] + p[i][0]) / 2,
                                                 (p[j][1] + p[i][1]) / 2};
      raw.cell_corners.push_back(child);
    }
  }
  return raw;
}

}  // namespace

int GasketMesh::vertex_at(int x, int y) const {
  auto it = coord_index.find(key(x, y));
  return it == coord_index.end() ? -1 : it->second;
}

int GasketMesh::cell_corner(const CellAddress& addr, int j) const {
  const int m = addr.level();
  if (m > level) throw std::invalid_argument("cell address deeper than mesh");
  if (j < 0 || j > 2) throw std::invalid_argument("corner index");
  int x = Q[j][0] << (level - m), y = Q[j][1] << (level - m);
  for (int t = 0; t < m; ++t) {
    int w = addr.letters[static_cast<size_t>(t)];
    x += Q[w][0] << (level - 1 - t);
    y += Q[w][1] << (level - 1 - t);
  }
  int v = vertex_at(x, y);
  if (v < 0) throw std::logic_error("cell corner not a mesh vertex");
  return v;
}

std::array<double, 2> GasketMesh::position(int v) const {
  double s = std::ldexp(1.0, -level);
  const auto& c = coords[static_cast<size_t>(v)];
  return {c[0] * s, c[1] * s};
}

GasketMesh build_mesh(int level) {
  if (level < 0 || level > kMaxLevel) throw std::invalid_argument("mesh level out of range");
  RawMesh base;
  base.level = 0;
  base.cell_corners.push_back({{{Q[0][0], Q[0][1]}, {Q[1][0], Q[1][1]}, {Q[2][0], Q[2][1]}}});
  GasketMesh m = canonicalize(base);
  for (int k = 0; k < level; ++k) m = canonicalize(subdivide(m));
  return m;
}

GasketMesh refine(const GasketMesh& mesh) {
  if (mesh.level >= kMaxLevel) throw std::invalid_argument("mesh level out of range");
  return canonicalize(subdivide(mesh));
}

int DomainMask::interior_count() const {
  int n = 0;
  for (auto r : role) n += (r == VertexRole::Interior);
  return n;
}

int DomainMask::boundary_count() const {
  int n = 0;
  for (auto r : role) n += (r == VertexRole::Boundary);
  return n;
}

DomainMask mask_from_cells(const GasketMesh& mesh,
                           const std::function<bool(int cell)>& pred) {
  DomainMask mask;
  mask.mesh = &mesh;
  mask.cell_in.assign(static_cast<size_t>(mesh.cell_count()), 0);
  mask.role.assign(static_cast<size_t>(mesh.vertex_count()), VertexRole::Exterior);
  mask.cell_count_per_vertex.assign(static_cast<size_t>(mesh.vertex_count()), 0);
  std::vector<std::uint8_t> touches_out(static_cast<size_t>(mesh.vertex_count()), 0);
  for (int c = 0; c < mesh.cell_count(); ++c) {
    bool in = pred(c);
    mask.cell_in[static_cast<size_t>(c)] = in ? 1 : 0;
    if (in) mask.domain_cells.push_back(c);
    for (int v : mesh.cells[static_cast<size_t>(c)]) {
      if (in) {
        mask.role[static_cast<size_t>(v)] = VertexRole::Interior;
        ++mask.cell_count_per_vertex[static_cast<size_t>(v)];
      } else {
        touches_out[static_cast<size_t>(v)] = 1;
      }
    }
  }
  const int h = 2 << mesh.level;
  const int corner_ids[3] = {mesh.vertex_at(0, h), mesh.vertex_at(-h / 2, 0),
                             mesh.vertex_at(h / 2, 0)};
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (mask.role[static_cast<size_t>(v)] != VertexRole::Interior) continue;
    bool corner = v == corner_ids[0] || v == corner_ids[1] || v == corner_ids[2];
    if (touches_out[static_cast<size_t>(v)] || corner)
      mask.role[static_cast<size_t>(v)] = VertexRole::Boundary;
  }
  return mask;
}

DomainMask mask_full(const GasketMesh& mesh) {
  return mask_from_cells(mesh, [](int) { return true; });
}

int line_threshold(const GasketMesh& mesh, const DyadicSequence& seq) {
  if (seq.exponents().back() > mesh.level)
    throw std::invalid_argument("mesh level below truncation depth n_K");
  int t = 2 << mesh.level;
  for (int n : seq.exponents()) t -= 1 << (mesh.level + 1 - n);
  return t;
}

DomainMask mask_upper(const GasketMesh& mesh, const DyadicSequence& seq) {
  const int t = line_threshold(mesh, seq);
  return mask_from_cells(mesh, [&](int c) {
    int ymin = mesh.coords[static_cast<size_t>(mesh.cells[static_cast<size_t>(c)][1])][1];
    return ymin >= t;
  });
}

DomainMask mask_lower(const GasketMesh& mesh, const DyadicSequence& seq) {
  const int t = line_threshold(mesh, seq);
  return mask_from_cells(mesh, [&](int c) {
    int ymin = mesh.coords[static_cast<size_t>(mesh.cells[static_cast<size_t>(c)][1])][1];
    return ymin < t;
  });
}

std::array<std::array<int, 2>, 3> cell_corner_coords(const GasketMesh& mesh,
                                                     const std::vector<int>& addr) {
  const int L = mesh.level, m = static_cast<int>(addr.size());
  if (m > L) throw std::invalid_argument("cell address deeper than mesh");
  std::array<std::array<int, 2>, 3> p;
  for (int j = 0; j < 3; ++j) p[j] = {Q[j][0] << (L - m), Q[j][1] << (L - m)};
  for (int t = 0; t < m; ++t) {
    int w = addr[static_cast<size_t>(t)];
    for (int j = 0; j < 3; ++j) {
      p[j][0] += Q[w][0] << (L - 1 - t);
      p[j][1] += Q[w][1] << (L - 1 - t);
    }
  }
  return p;
}

namespace {

void fill_harmonic_rec(const GasketMesh& mesh, MeshFunction& u,
                       std::array<std::array<int, 2>, 3> p, std::array<double, 3> f,
                       int depth) {
  for (int j = 0; j < 3; ++j) u[mesh.vertex_at(p[j][0], p[j][1])] = f[j];
  if (depth == 0) return;
  for (int j = 0; j < 3; ++j) {
    std::array<std::array<int, 2>, 3> cp;
    std::array<double, 3> cf;
    for (int i = 0; i < 3; ++i) {
      if (i == j) {
        cp[i] = p[j];
        cf[i] = f[j];
      } else {
        int k = 3 - i - j;
        cp[i] = {(p[j][0] + p[i][0]) / 2, (p[j][1] + p[i][1]) / 2};
        cf[i] = (2.0 * f[j] + 2.0 * f[i] + f[k]) / 5.0;
      }
    }
    fill_harmonic_rec(mesh, u, cp, cf, depth - 1);
  }
}

}  // namespace

void fill_harmonic_cell(MeshFunction& u, const std::vector<int>& addr,
                        const std::array<double, 3>& f) {
  const GasketMesh& mesh = *u.mesh;
  fill_harmonic_rec(mesh, u, cell_corner_coords(mesh, addr), f,
                    mesh.level - static_cast<int>(addr.size()));
}

MeshFunction harmonic_extend(const MeshFunction& f, const GasketMesh& fine) {
  const GasketMesh& coarse = *f.mesh;
  if (fine.level != coarse.level + 1) throw std::invalid_argument("fine mesh must be one level down");
  MeshFunction g(fine);
  for (const auto& cell : coarse.cells) {
    double fv[3];
    std::array<int, 2> p[3];
    for (int j = 0; j < 3; ++j) {
      fv[j] = f[cell[j]];
      const auto& c = coarse.coords[static_cast<size_t>(cell[j])];
      p[j] = {2 * c[0], 2 * c[1]};
    }
    for (int j = 0; j < 3; ++j) g[fine.vertex_at(p[j][0], p[j][1])] = fv[j];
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        int k = 3 - a - b;
        int mx = (p[a][0] + p[b][0]) / 2, my = (p[a][1] + p[b][1]) / 2;
        g[fine.vertex_at(mx, my)] = (2.0 * fv[a] + 2.0 * fv[b] + fv[k]) / 5.0;
      }
  }
  return g;
}

double graph_energy_bilinear(const MeshFunction& f, const MeshFunction& g,
                             const DomainMask* mask) {
  const GasketMesh& mesh = *f.mesh;
  double sum = 0.0;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    if (mask && !mask->cell_in[static_cast<size_t>(c)]) continue;
    const auto& cell = mesh.cells[static_cast<size_t>(c)];
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b)
        sum += (f[cell[a]] - f[cell[b]]) * (g[cell[a]] - g[cell[b]]);
  }
  return sum * std::pow(5.0 / 3.0, mesh.level);
}

double graph_energy(const MeshFunction& f, const DomainMask* mask) {
  return graph_energy_bilinear(f, f, mask);
}

double integrate(const MeshFunction& f, const DomainMask* mask) {
  const GasketMesh& mesh = *f.mesh;
  double mu = std::pow(3.0, -mesh.level);
  double sum = 0.0;
  for (int c = 0; c < mesh.cell_count(); ++c) {
    if (mask && !mask->cell_in[static_cast<size_t>(c)]) continue;
    const auto& cell = mesh.cells[static_cast<size_t>(c)];
    sum += (f[cell[0]] + f[cell[1]] + f[cell[2]]) / 3.0;
  }
  return sum * mu;
}

double vertex_measure(const DomainMask& mask, int v) {
  return mask.cell_count_per_vertex[static_cast<size_t>(v)] *
         std::pow(3.0, -mask.mesh->level - 1);
}

namespace {

using Rational = boost::multiprecision::cpp_rational;

MeshFunction solve_exact(const DomainMask& mask, const MeshFunction& boundary,
                         const MeshFunction* forcing) {
  const GasketMesh& mesh = *mask.mesh;
  if (mesh.level > 6) throw std::invalid_argument("exact mode limited to levels <= 6");
  std::vector<int> unknown(static_cast<size_t>(mesh.vertex_count()), -1);
  std::vector<int> vert_of;
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mask.role[static_cast<size_t>(v)] == VertexRole::Interior) {
      unknown[static_cast<size_t>(v)] = static_cast<int>(vert_of.size());
      vert_of.push_back(v);
    }
  const int n = static_cast<int>(vert_of.size());
  std::vector<std::map<int, Rational>> rows(static_cast<size_t>(n));
  std::vector<Rational> rhs(static_cast<size_t>(n), 0);
  // weak form scaled by (3/5)^k: sum (u(p)-u(q)) = F(p) mu_p (3/5)^k
  Rational scale = Rational(3, 5);
  Rational sk = 1;
  for (int i = 0; i < mesh.level; ++i) sk *= scale;
  Rational mu1 = 1;
  for (int i = 0; i < mesh.level + 1; ++i) mu1 /= 3;
  for (int c : mask.domain_cells) {
    const auto& cell = mesh.cells[static_cast<size_t>(c)];
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        int p = cell[a], q = cell[b];
        int up = unknown[static_cast<size_t>(p)], uq = unknown[static_cast<size_t>(q)];
        if (up >= 0) {
          rows[static_cast<size_t>(up)][up] += 1;
          if (uq >= 0)
            rows[static_cast<size_t>(up)][uq] -= 1;
          else
            rhs[static_cast<size_t>(up)] += Rational(boundary[q]);
        }
        if (uq >= 0) {
          rows[static_cast<size_t>(uq)][uq] += 1;
          if (up >= 0)
            rows[static_cast<size_t>(uq)][up] -= 1;
          else
            rhs[static_cast<size_t>(uq)] += Rational(boundary[p]);
        }
      }
  }
  if (forcing) {
    for (int i = 0; i < n; ++i) {
      int v = vert_of[static_cast<size_t>(i)];
      rhs[static_cast<size_t>(i)] +=
          Rational((*forcing)[v]) * mask.cell_count_per_vertex[static_cast<size_t>(v)] * mu1 * sk;
    }
  }
  // sparse Gaussian elimination, natural order
  for (int i = 0; i < n; ++i) {
    Rational piv = rows[static_cast<size_t>(i)].at(i);
    for (int j = i + 1; j < n; ++j) {
      auto it = rows[static_cast<size_t>(j)].find(i);
      if (it == rows[static_cast<size_t>(j)].end()) continue;
      Rational factor = it->second / piv;
      rows[static_cast<size_t>(j)].erase(it);
      for (const auto& [col, val] : rows[static_cast<size_t>(i)]) {
        if (col <= i) continue;
        Rational& r = rows[static_cast<size_t>(j)][col];
        r -= factor * val;
        if (r == 0) rows[static_cast<size_t>(j)].erase(col);
      }
      rhs[static_cast<size_t>(j)] -= factor * rhs[static_cast<size_t>(i)];
    }
  }
  std::vector<Rational> x(static_cast<size_t>(n), 0);
  for (int i = n - 1; i >= 0; --i) {
    Rational s = rhs[static_cast<size_t>(i)];
    for (const auto& [col, val] : rows[static_cast<size_t>(i)])
      if (col > i) s -= val * x[static_cast<size_t>(col)];
    x[static_cast<size_t>(i)] = s / rows[static_cast<size_t>(i)].at(i);
  }
  MeshFunction u(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mask.role[static_cast<size_t>(v)] == VertexRole::Boundary) u[v] = boundary[v];
  for (int i = 0; i < n; ++i)
    u[vert_of[static_cast<size_t>(i)]] = static_cast<double>(x[static_cast<size_t>(i)]);
  return u;
}

}  // namespace

MeshFunction solve_dirichlet_graph(const DomainMask& mask, const MeshFunction& boundary,
                                   const MeshFunction* forcing, const SolveOptions& opts) {
  const GasketMesh& mesh = *mask.mesh;
  if (mask.boundary_count() == 0) throw std::invalid_argument("empty boundary set");
  if (opts.exact) return solve_exact(mask, boundary, forcing);
  if (opts.threads > 0) Eigen::setNbThreads(opts.threads);

  std::vector<int> unknown(static_cast<size_t>(mesh.vertex_count()), -1);
  std::vector<int> vert_of;
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mask.role[static_cast<size_t>(v)] == VertexRole::Interior) {
      unknown[static_cast<size_t>(v)] = static_cast<int>(vert_of.size());
      vert_of.push_back(v);
    }
  const int n = static_cast<int>(vert_of.size());
  const double w = std::pow(5.0 / 3.0, mesh.level);

  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(mask.domain_cells.size() * 12);
  Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
  for (int c : mask.domain_cells) {
    const auto& cell = mesh.cells[static_cast<size_t>(c)];
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        int p = cell[a], q = cell[b];
        int up = unknown[static_cast<size_t>(p)], uq = unknown[static_cast<size_t>(q)];
        if (up >= 0) {
          trip.emplace_back(up, up, w);
          if (uq >= 0)
            trip.emplace_back(up, uq, -w);
          else
            rhs[up] += w * boundary[q];
        }
        if (uq >= 0) {
          trip.emplace_back(uq, uq, w);
          if (up >= 0)
            trip.emplace_back(uq, up, -w);
          else
            rhs[uq] += w * boundary[p];
        }
      }
  }
  if (forcing)
    for (int i = 0; i < n; ++i) {
      int v = vert_of[static_cast<size_t>(i)];
      rhs[i] += (*forcing)[v] * vertex_measure(mask, v);
    }

  Eigen::SparseMatrix<double> A(n, n);
  A.setFromTriplets(trip.begin(), trip.end());
  Eigen::ConjugateGradient<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper> cg;
  cg.setTolerance(opts.tolerance);
  cg.setMaxIterations(50LL * mesh.vertex_count());
  cg.compute(A);
  Eigen::VectorXd x = cg.solve(rhs);
  if (cg.info() != Eigen::Success) throw std::runtime_error("CG did not converge");

  MeshFunction u(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mask.role[static_cast<size_t>(v)] == VertexRole::Boundary) u[v] = boundary[v];
  for (int i = 0; i < n; ++i) u[vert_of[static_cast<size_t>(i)]] = x[i];
  return u;
}

}  // namespace gasketbvp
