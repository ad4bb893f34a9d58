#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "gasketbvp/mesh.hpp"
#include "gasketbvp/ratios.hpp"

using namespace gasketbvp;

TEST_CASE("mesh counts") {
  auto m0 = build_mesh(0);
  CHECK(m0.vertex_count() == 3);
  CHECK(m0.edge_count() == 3);
  auto m1 = build_mesh(1);
  CHECK(m1.vertex_count() == 6);
  CHECK(m1.edge_count() == 9);
  auto m5 = build_mesh(5);
  CHECK(m5.vertex_count() == 366);
  CHECK(m5.edge_count() == 729);
  for (int k = 0; k <= 5; ++k)
    CHECK(build_mesh(k).vertex_count() == 3 * ((int)std::pow(3, k) + 1) / 2);
}

TEST_CASE("vertex degrees") {
  auto m = build_mesh(4);
  const int h = 2 << m.level;
  int corners[3] = {m.vertex_at(0, h), m.vertex_at(-h / 2, 0), m.vertex_at(h / 2, 0)};
  for (int v = 0; v < m.vertex_count(); ++v) {
    bool corner = v == corners[0] || v == corners[1] || v == corners[2];
    CHECK(m.adjacency[(size_t)v].size() == (corner ? 2u : 4u));
  }
}

TEST_CASE("refine matches direct build") {
  auto m3 = build_mesh(3);
  auto r = refine(build_mesh(2));
  REQUIRE(r.vertex_count() == m3.vertex_count());
  CHECK(r.coords == m3.coords);
  CHECK(r.cells == m3.cells);
  CHECK(r.adjacency == m3.adjacency);
}

TEST_CASE("harmonic extend") {
  auto m0 = build_mesh(0);
  auto m1 = build_mesh(1);
  MeshFunction c(m0, 1.0);
  auto ce = harmonic_extend(c, m1);
  for (double v : ce.values) CHECK(v == doctest::Approx(1.0));

  MeshFunction f(m0);
  const int h0 = 2;
  f[m0.vertex_at(0, h0)] = 1.0;  // q0
  auto g = harmonic_extend(f, m1);
  CHECK(g[m1.vertex_at(-1, 2)] == doctest::Approx(0.4));  // mid q0-q1
  CHECK(g[m1.vertex_at(1, 2)] == doctest::Approx(0.4));   // mid q0-q2
  CHECK(g[m1.vertex_at(0, 0)] == doctest::Approx(0.2));   // mid q1-q2

  // energy conservation through several levels
  CHECK(graph_energy(f) == doctest::Approx(2.0));
  std::vector<GasketMesh> meshes;
  meshes.reserve(7);
  meshes.push_back(m0);
  MeshFunction cur = f;
  cur.mesh = &meshes[0];
  for (int k = 1; k <= 6; ++k) {
    meshes.push_back(refine(meshes.back()));
    cur = harmonic_extend(cur, meshes.back());
    CHECK(graph_energy(cur) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("integrate") {
  auto m = build_mesh(4);
  MeshFunction one(m, 1.0);
  CHECK(integrate(one) == doctest::Approx(1.0).epsilon(1e-12));

  // harmonic with V0 data (1,0,0): quadrature stable across levels
  auto m0 = build_mesh(0);
  MeshFunction f(m0);
  f[m0.vertex_at(0, 2)] = 1.0;
  std::vector<GasketMesh> meshes;
  meshes.reserve(6);
  meshes.push_back(m0);
  MeshFunction cur = f;
  cur.mesh = &meshes[0];
  CHECK(integrate(cur) == doctest::Approx(1.0 / 3.0));
  for (int k = 1; k <= 5; ++k) {
    meshes.push_back(refine(meshes.back()));
    cur = harmonic_extend(cur, meshes.back());
    CHECK(integrate(cur) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  }

  // indicator of one level-2 cell
  auto m2 = build_mesh(2);
  MeshFunction ind(m2);
  CellAddress cell({1, 2});
  for (int j = 0; j < 3; ++j) ind[m2.cell_corner(cell, j)] = 1.0;
  DomainMask cellmask = mask_from_cells(m2, [&](int c) {
    for (int j = 0; j < 3; ++j)
      if (!std::count(m2.cells[(size_t)c].begin(), m2.cells[(size_t)c].end(),
                      m2.cell_corner(cell, j)))
        return false;
    return true;
  });
  CHECK(integrate(ind, &cellmask) == doctest::Approx(1.0 / 9.0));
}

TEST_CASE("upper mask boundary structure") {
  for (auto [exps, K] : std::vector<std::pair<std::vector<int>, int>>{
           {{1}, 1}, {{1, 3}, 2}, {{1, 3, 5}, 3}, {{2, 3}, 2}, {{1, 2, 3, 4, 5}, 5}}) {
    DyadicSequence seq(exps, K);
    int L = exps.back() + 1;
    auto mesh = build_mesh(L);
    auto mask = mask_upper(mesh, seq);
    CHECK(mask.boundary_count() == (1 << K) + 1);
    // q0 is a boundary vertex
    CHECK(mask.role[(size_t)mesh.vertex_at(0, 2 << L)] == VertexRole::Boundary);
    // upper + lower cells partition the mesh
    auto lower = mask_lower(mesh, seq);
    CHECK(mask.domain_cells.size() + lower.domain_cells.size() == (size_t)mesh.cell_count());
  }
}

TEST_CASE("dirichlet solve: maximum principle and constants") {
  auto mesh = build_mesh(4);
  auto mask = mask_full(mesh);
  MeshFunction bc(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mask.role[(size_t)v] == VertexRole::Boundary) bc[v] = 3.5;
  auto u = solve_dirichlet_graph(mask, bc);
  for (double v : u.values) CHECK(v == doctest::Approx(3.5).epsilon(1e-9));

  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mask.role[(size_t)v] == VertexRole::Boundary) bc[v] = unif(rng);
  auto u2 = solve_dirichlet_graph(mask, bc);
  double lo = 1e9, hi = -1e9;
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mask.role[(size_t)v] == VertexRole::Boundary) {
      lo = std::min(lo, bc[v]);
      hi = std::max(hi, bc[v]);
    }
  for (double v : u2.values) {
    CHECK(v >= lo - 1e-10);
    CHECK(v <= hi + 1e-10);
  }
}

TEST_CASE("dirichlet solve: m0 shows up at the cut") {
  // boundary 1 at q0, 0 on the cut for the truncated x = 1 at depth 5;
  // the value at F_1 q_0 is the depth-5 continued fraction m0
  DyadicSequence seq = DyadicSequence::periodic({1}, 5);
  auto mesh = build_mesh(5);
  auto mask = mask_upper(mesh, seq);
  MeshFunction bc(mesh);
  bc[mesh.vertex_at(0, 2 << 5)] = 1.0;
  SolveOptions opts;
  opts.exact = true;
  auto u = solve_dirichlet_graph(mask, bc, nullptr, opts);
  int f1q0 = mesh.vertex_at(-(1 << 4), 1 << 5);
  CHECK(u[f1q0] == doctest::Approx(m0_truncated(seq)).epsilon(1e-12));

  auto ucg = solve_dirichlet_graph(mask, bc);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    CHECK(ucg[v] == doctest::Approx(u[v]).epsilon(1e-8));
}

TEST_CASE("dirichlet solve: linearity") {
  auto mesh = build_mesh(3);
  auto mask = mask_full(mesh);
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  MeshFunction b1(mesh), b2(mesh), f1(mesh), f2(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    if (mask.role[(size_t)v] == VertexRole::Boundary) {
      b1[v] = unif(rng);
      b2[v] = unif(rng);
    }
    f1[v] = unif(rng);
    f2[v] = unif(rng);
  }
  double al = 1.7, be = -0.6;
  MeshFunction bsum(mesh), fsum(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v) {
    bsum[v] = al * b1[v] + be * b2[v];
    fsum[v] = al * f1[v] + be * f2[v];
  }
  auto u1 = solve_dirichlet_graph(mask, b1, &f1);
  auto u2 = solve_dirichlet_graph(mask, b2, &f2);
  auto us = solve_dirichlet_graph(mask, bsum, &fsum);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    CHECK(us[v] == doctest::Approx(al * u1[v] + be * u2[v]).epsilon(1e-9));
}

TEST_CASE("forcing sign sanity") {
  // -Delta u = 1 with zero boundary gives u > 0 inside
  auto mesh = build_mesh(4);
  auto mask = mask_full(mesh);
  MeshFunction bc(mesh), one(mesh, 1.0);
  auto u = solve_dirichlet_graph(mask, bc, &one);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    if (mask.role[(size_t)v] == VertexRole::Interior) CHECK(u[v] > 0.0);
}
