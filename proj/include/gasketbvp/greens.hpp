#ifndef GASKETBVP_GREENS_HPP
#define GASKETBVP_GREENS_HPP

#include <map>
#include <vector>

#include "gasketbvp/harmonics.hpp"

namespace gasketbvp {

/// Standard SG Green's kernel weight for a pair of level-k spline
/// vertices inside one (k-1)-cell: (3/10)(3/5)^k on the diagonal,
/// (1/10)(3/5)^k for distinct midpoints of the same cell.
double g_standard(int k, bool diagonal);

/// Domain kernel weights on T_x^l = { F~_omega(q0) : |omega| = l }:
/// (m0 + m0^2)/(2 m0 + 1) (3/5)^{n_l} on the diagonal and
/// m0^2/(2 m0 + 1) (3/5)^{n_l} for n_l-neighbors, m0 = m0(y_{l-1}).
double g_domain_diag(const DyadicSequence& seq, int l);
double g_domain_neighbor(const DyadicSequence& seq, int l);

/// Spline phi_z^{n_l} for z = F~_omega(q0), |omega| = l: a plain hat on
/// F~~_omega(SG) and the h0^{y_l} shape on F~_omega(SG), so that it
/// vanishes on S(x) instead of on the two lower corners.  1 <= l < K.
MeshFunction modified_spline(const Domain& dom, const Word& omega);

/// The full level-n_m spline family phi_z^{n_m}, keyed by vertex id,
/// for z in V_{n_m} intersect Omega_x; T_x vertices get the modified
/// shape on their straddling cell.
std::map<int, MeshFunction> level_splines(const Domain& dom, int m);

/// Truncated Green's kernel
///   G^m(s,t) = sum_{k<=n_m} sum_{z,z'} g_x(z,z') phi_z^k(s) phi_{z'}^k(t)
/// with the pair weights above, plus the induced solver for the
/// Dirichlet problem -Lap u = F, u = 0 on the boundary.
class GreenOperator {
 public:
  struct Term {
    int z, zp;       // spline vertex ids (ordered pair)
    int level;       // k
    int t_level;     // l when the pair lies in T_x^l, else 0
    double weight;   // g_x(z, z')
  };

  /// Domain kernel for Omega_x; 1 <= m <= K-1.
  GreenOperator(const Domain& dom, int m);

  /// Standard SG kernel truncated at spline level `levels`.
  GreenOperator(const GasketMesh& mesh, int levels);

  double kernel(int s, int t) const;
  MeshFunction kernel_slice(int t) const;  // G^m(. , t)

  /// u(s) = sum g_x(z,z') phi_z(s) int phi_{z'} F dmu, with cell-average
  /// quadrature at the mesh level.
  MeshFunction solve(const MeshFunction& forcing) const;

  const std::vector<Term>& terms() const { return terms_; }
  const MeshFunction& spline(int z) const { return splines_.at(z); }
  const std::map<int, Word>& t_words() const { return t_words_; }
  const Domain* domain() const { return dom_; }
  int truncation() const { return m_; }

 private:
  void build(int top, long long t_line);

  const Domain* dom_ = nullptr;
  const GasketMesh* mesh_ = nullptr;
  int m_ = 0;
  std::vector<Term> terms_;
  std::map<int, MeshFunction> splines_;
  std::map<int, Word> t_words_;
};

/// Per-level boundary flux of the Green's solution: the T_x^l terms
/// contribute -2 (5/3)^{n_{l+1}} (1 - m0(y_l)) 2^l on S_omega(x), and
/// sup_l is controlled by (2^l / 3^{n_l}) ||F||_inf.
struct FluxBoundReport {
  std::vector<double> level_sup;    // l = 1..m
  std::vector<double> level_bound;  // (2^l / 3^{n_l}) ||F||_inf
  std::vector<double> flux;         // combined values on the 2^m pieces
};

FluxBoundReport solution_flux_bound(const GreenOperator& op, const MeshFunction& forcing);

}  // namespace gasketbvp

#endif
