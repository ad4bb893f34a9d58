#ifndef GASKETBVP_MESH_HPP
#define GASKETBVP_MESH_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <unordered_map>
#include <vector>

#include "gasketbvp/dyadic.hpp"

namespace gasketbvp {

/// Level-k graph approximation of SG.  Integer planar embedding:
/// q0 = (0, 2^{k+1}), q1 = (-2^k, 0), q2 = (2^k, 0); every vertex of
/// V_k has integer coordinates at this scale.  Vertices are ordered
/// top-to-bottom, left-to-right ((-y, x) lexicographic), which fixes a
/// canonical id assignment.
struct GasketMesh {
  int level = 0;
  std::vector<std::array<int, 2>> coords;        // per vertex (x, y)
  std::vector<std::array<int, 3>> cells;         // corner ids, (q0, q1, q2) order
  std::vector<std::vector<int>> adjacency;
  std::unordered_map<std::int64_t, int> coord_index;

  int vertex_count() const { return static_cast<int>(coords.size()); }
  int cell_count() const { return static_cast<int>(cells.size()); }
  int edge_count() const { return 3 * cell_count(); }

  /// Vertex id at integer coordinates, or -1.
  int vertex_at(int x, int y) const;

  /// Corner j of the cell with address `addr` (level <= mesh level),
  /// as a vertex id of this mesh.
  int cell_corner(const CellAddress& addr, int j) const;

  /// Planar position scaled to the unit picture: x in [-1, 1], y in [0, 2].
  std::array<double, 2> position(int v) const;

  static std::int64_t key(int x, int y) {
    return (static_cast<std::int64_t>(x) << 32) ^ static_cast<std::uint32_t>(y);
  }
};

GasketMesh build_mesh(int level);

/// One subdivision step; identical to build_mesh(level + 1).
GasketMesh refine(const GasketMesh& mesh);

struct MeshFunction {
  const GasketMesh* mesh = nullptr;
  std::vector<double> values;

  MeshFunction() = default;
  explicit MeshFunction(const GasketMesh& m, double fill = 0.0)
      : mesh(&m), values(static_cast<size_t>(m.vertex_count()), fill) {}

  double& operator[](int v) { return values[static_cast<size_t>(v)]; }
  double operator[](int v) const { return values[static_cast<size_t>(v)]; }
};

enum class VertexRole : std::uint8_t { Exterior = 0, Interior = 1, Boundary = 2 };

/// Sub-domain of the mesh given as a union of level-k cells.  A vertex
/// of a domain cell is Boundary when it also touches a cell outside the
/// domain or is one of the three corners of SG; Interior otherwise.
struct DomainMask {
  const GasketMesh* mesh = nullptr;
  std::vector<std::uint8_t> cell_in;   // 0/1 per cell
  std::vector<VertexRole> role;        // per vertex
  std::vector<int> domain_cells;       // indices of included cells
  std::vector<int> cell_count_per_vertex;  // domain cells touching each vertex

  bool in_domain(int v) const { return role[static_cast<size_t>(v)] != VertexRole::Exterior; }
  int interior_count() const;
  int boundary_count() const;
};

DomainMask mask_from_cells(const GasketMesh& mesh,
                           const std::function<bool(int cell)>& pred);
DomainMask mask_full(const GasketMesh& mesh);

/// y-threshold of the horizontal cut line for the truncated x, at this
/// mesh's integer scale: 2^{L+1} - sum_j 2^{L+1-n_j}.  Needs L >= n_K.
int line_threshold(const GasketMesh& mesh, const DyadicSequence& seq);

/// Omega_x^(K): cells on or above the cut line.  Boundary comes out as
/// q0 plus the 2^K bottom vertices of the n_K-cells.
DomainMask mask_upper(const GasketMesh& mesh, const DyadicSequence& seq);

/// Complementary domain below the line.
DomainMask mask_lower(const GasketMesh& mesh, const DyadicSequence& seq);

/// Integer corner coordinates of a cell address at this mesh's scale,
/// in (q0, q1, q2) order.
std::array<std::array<int, 2>, 3> cell_corner_coords(const GasketMesh& mesh,
                                                     const std::vector<int>& addr);

/// Write the harmonic interpolant of the given corner values on every
/// mesh vertex inside the addressed cell.
void fill_harmonic_cell(MeshFunction& u, const std::vector<int>& addr,
                        const std::array<double, 3>& f);

/// 1/5-2/5 rule: each midpoint of a refined cell edge (i, j) gets
/// (2 f_i + 2 f_j + f_k) / 5.  `fine` must be refine(f.mesh).
MeshFunction harmonic_extend(const MeshFunction& f, const GasketMesh& fine);

/// Renormalized graph energy (5/3)^k sum over (mask) cell edges.
double graph_energy(const MeshFunction& f, const DomainMask* mask = nullptr);
double graph_energy_bilinear(const MeshFunction& f, const MeshFunction& g,
                             const DomainMask* mask = nullptr);

/// Cell-average quadrature against the self-similar measure,
/// mu(level-k cell) = 3^{-k}.
double integrate(const MeshFunction& f, const DomainMask* mask = nullptr);

/// Vertex weight used in the weak form: (cells containing v) * 3^{-k-1}.
double vertex_measure(const DomainMask& mask, int v);

struct SolveOptions {
  double tolerance = 1e-11;
  bool exact = false;   // rational elimination; levels <= 6
  int threads = 0;      // 0 = library default
};

/// Brute-force Dirichlet oracle.  Interior equations in weak form:
/// (5/3)^k sum_{q~p} (u(p) - u(q)) = F(p) mu_p, which for a full
/// degree-4 vertex is (3/2) 5^k (sum u(q) - 4 u(p)) = -F(p).
/// `boundary` supplies values at Boundary vertices; `forcing` may be null.
MeshFunction solve_dirichlet_graph(const DomainMask& mask,
                                   const MeshFunction& boundary,
                                   const MeshFunction* forcing = nullptr,
                                   const SolveOptions& opts = {});

}  // namespace gasketbvp

#endif
