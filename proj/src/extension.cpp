#include "gasketbvp/extension.hpp"

#include <cmath>
#include <stdexcept>

namespace gasketbvp {

namespace {

// length of the consecutive run n_{m+1}, n_{m+1}+1, ... in the exponents
int run_length(const DyadicSequence& seq, int m) {
  const auto& e = seq.exponents();
  int r = 1;
  while (m + r < seq.size() && e[size_t(m + r)] == e[size_t(m + r - 1)] + 1) ++r;
  return r;
}

// constant s on every cell of `addr` lying below the cut line
void fill_below(MeshFunction& u, int t, std::vector<int>& addr, double s) {
  const GasketMesh& mesh = *u.mesh;
  auto p = cell_corner_coords(mesh, addr);
  if (p[0][1] <= t) {  // entirely below (or touching from below)
    fill_harmonic_cell(u, addr, {s, s, s});
    return;
  }
  if (p[1][1] >= t) return;  // entirely above
  for (int w = 0; w < 3; ++w) {
    addr.push_back(w);
    fill_below(u, t, addr, s);
    addr.pop_back();
  }
}

// block construction below the line for a trace that is constant
// sign(v_1) * s on the depth-r pieces indexed by v
void fill_extension(const Domain& dom, MeshFunction& u, const Word& omega, double s,
                    bool signed_pattern) {
  const DyadicSequence& seq = dom.seq;
  const int m = omega.length();
  if (!nonconsecutive_bound(seq))
    throw std::invalid_argument("nonconsecutive condition fails at truncation depth");
  const int r = run_length(seq, m);
  const int run_end = seq.exponent(m + r - 1);
  if (dom.level() < run_end + 1)
    throw std::invalid_argument("mesh too coarse for the extension block");
  const int t = line_threshold(*dom.mesh, seq);
  for (int idx = 0; idx < (1 << r); ++idx) {
    std::vector<int> letters = omega.letters;
    for (int k = 0; k < r; ++k) letters.push_back(((idx >> (r - 1 - k)) & 1) ? 2 : 1);
    double sv = s;
    if (signed_pattern && letters[size_t(m)] == 2) sv = -s;
    std::vector<int> a = tilde_F(seq, Word(letters)).letters;
    a.push_back(1);
    fill_harmonic_cell(u, a, {sv, 0.0, 0.0});
    a.back() = 2;
    fill_harmonic_cell(u, a, {sv, 0.0, 0.0});
    a.back() = 0;
    fill_below(u, t, a, sv);
  }
}

}  // namespace

GluedFunction glue(const Domain& dom, const MeshFunction& upper,
                   const MeshFunction& lower, double tol) {
  const GasketMesh& mesh = *dom.mesh;
  for (int v : boundary_vertices(dom))
    if (std::fabs(upper[v] - lower[v]) > tol)
      throw std::invalid_argument("traces disagree on S(x)");
  GluedFunction g;
  g.combined = MeshFunction(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    g.combined[v] = dom.mask.in_domain(v) ? upper[v] : lower[v];
  DomainMask low = mask_lower(mesh, dom.seq);
  g.report.total = graph_energy(g.combined);
  g.report.upper = graph_energy(g.combined, &dom.mask);
  g.report.lower = graph_energy(g.combined, &low);
  const int K = dom.seq.size();
  for (int m = 1; m <= K; ++m) {
    double e = 0.0;
    std::vector<int> letters(static_cast<size_t>(m), 1);
    for (int idx = 0; idx < (1 << m); ++idx) {
      for (int k = 0; k < m; ++k)
        letters[static_cast<size_t>(k)] = ((idx >> (m - 1 - k)) & 1) ? 2 : 1;
      CellAddress addr = tilde_F(dom.seq, Word(letters));
      double f[3];
      for (int j = 0; j < 3; ++j) f[j] = g.combined[mesh.cell_corner(addr, j)];
      e += (f[0] - f[1]) * (f[0] - f[1]) + (f[0] - f[2]) * (f[0] - f[2]) +
           (f[1] - f[2]) * (f[1] - f[2]);
    }
    g.report.strips.push_back(e * std::pow(5.0 / 3.0, dom.seq.exponent(m - 1)));
  }
  return g;
}

HaarSpectrum trace(const Domain& dom, const MeshFunction& upper, int depth) {
  if (depth < 0 || depth > dom.seq.size())
    throw std::out_of_range("trace depth exceeds truncation");
  HaarSpectrum spec = boundary_spectrum(dom, upper);
  for (auto it = spec.coeffs.begin(); it != spec.coeffs.end();)
    it = it->first.length() >= depth ? spec.coeffs.erase(it) : std::next(it);
  return spec;
}

MeshFunction extend_basis(const Domain& dom, const Word& omega) {
  MeshFunction u = eval_h_omega(dom, omega);
  fill_extension(dom, u, omega, std::pow(2.0, omega.length() / 2.0), true);
  return u;
}

MeshFunction extend_one_minus_h0(const Domain& dom) {
  MeshFunction h0 = eval_h0(dom);
  MeshFunction u(*dom.mesh);
  for (int v = 0; v < dom.mesh->vertex_count(); ++v)
    if (dom.mask.in_domain(v)) u[v] = 1.0 - h0[v];
  fill_extension(dom, u, Word(), 1.0, false);
  return u;
}

double extension_added_energy(const DyadicSequence& seq, int m) {
  if (m < 0 || m >= seq.size()) throw std::out_of_range("word length out of range");
  const int r = run_length(seq, m);
  return std::pow(2.0, m + r + 2) * std::pow(5.0 / 3.0, seq.exponent(m + r - 1) + 1);
}

ExtensionReport extend(const Domain& dom, const HaarSpectrum& spec) {
  const GasketMesh& mesh = *dom.mesh;
  ExtensionReport rep;
  rep.extended = MeshFunction(mesh);
  if (spec.a != 0.0) {
    MeshFunction h0 = eval_h0(dom);
    for (int v = 0; v < mesh.vertex_count(); ++v) rep.extended[v] += spec.a * h0[v];
  }
  if (spec.b != 0.0) {
    MeshFunction e = extend_one_minus_h0(dom);
    for (int v = 0; v < mesh.vertex_count(); ++v) rep.extended[v] += spec.b * e[v];
  }
  for (const auto& [w, c] : spec.coeffs) {
    if (c == 0.0) continue;
    MeshFunction e = extend_basis(dom, w);
    for (int v = 0; v < mesh.vertex_count(); ++v) rep.extended[v] += c * e[v];
  }
  rep.upper_energy = graph_energy(rep.extended, &dom.mask);
  rep.total_energy = graph_energy(rep.extended);
  rep.ratio = rep.upper_energy > 0.0 ? rep.total_energy / rep.upper_energy : 0.0;
  return rep;
}

MeshFunction minimal_lower_extension(const Domain& dom, const MeshFunction& upper) {
  const GasketMesh& mesh = *dom.mesh;
  DomainMask low = mask_lower(mesh, dom.seq);
  // free (natural) condition at the bottom corners: only the atoms stay
  // Dirichlet
  const int h = 1 << mesh.level;
  for (int q : {mesh.vertex_at(-h, 0), mesh.vertex_at(h, 0)})
    if (low.role[static_cast<size_t>(q)] == VertexRole::Boundary)
      low.role[static_cast<size_t>(q)] = VertexRole::Interior;
  MeshFunction bc(mesh);
  for (int v : boundary_vertices(dom)) bc[v] = upper[v];
  MeshFunction sol = solve_dirichlet_graph(low, bc);
  MeshFunction out(mesh);
  for (int v = 0; v < mesh.vertex_count(); ++v)
    out[v] = dom.mask.in_domain(v) ? upper[v] : sol[v];
  return out;
}

std::vector<ObstructionRow> obstruction_experiment(int max_n) {
  if (max_n < 2 || max_n > 9) throw std::out_of_range("run length out of range");
  std::vector<ObstructionRow> rows;
  double prev = 0.0;
  for (int n = 2; n <= max_n; ++n) {
    std::vector<int> exps(static_cast<size_t>(n));
    for (int j = 0; j < n; ++j) exps[static_cast<size_t>(j)] = j + 1;
    Domain dom(DyadicSequence(exps, n), n + 1);
    MeshFunction h1 = eval_h1(dom);
    MeshFunction ext = minimal_lower_extension(dom, h1);
    double e = graph_energy(ext);
    rows.push_back({n, e, prev > 0.0 ? e / prev : 0.0});
    prev = e;
  }
  return rows;
}

}  // namespace gasketbvp
