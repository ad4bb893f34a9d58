#include "gasketbvp/flux.hpp"

#include <cmath>
#include <stdexcept>

namespace gasketbvp {

namespace {

Word word_from_index(int idx, int m) {
  std::vector<int> letters(static_cast<size_t>(m));
  for (int k = 0; k < m; ++k)
    letters[static_cast<size_t>(k)] = ((idx >> (m - 1 - k)) & 1) ? 2 : 1;
  return Word(std::move(letters));
}

// psi_omega value on the atom indexed by the length-m word bits
double psi_value(const Word& omega, int idx, int m) {
  const int mo = omega.length();
  if (mo >= m) throw std::invalid_argument("word too deep for piece resolution");
  for (int k = 0; k < mo; ++k)
    if ((((idx >> (m - 1 - k)) & 1) ? 2 : 1) != omega.letters[static_cast<size_t>(k)]) return 0.0;
  double s = std::pow(2.0, mo / 2.0);
  return ((idx >> (m - 1 - mo)) & 1) ? -s : s;
}

}  // namespace

BoundaryFlux normal_derivative(const DyadicSequence& seq, const HaarSpectrum& spec) {
  BoundaryFlux flux;
  const double m0 = m0_truncated(seq);
  const double lead = 2.0 * std::pow(5.0 / 3.0, seq.exponent(0)) * (1.0 - m0);
  flux.constant_part = (spec.b - spec.a) * lead;
  flux.dn_at_q0 = (spec.a - spec.b) * lead;
  for (const auto& [w, c] : spec.coeffs) {
    if (c == 0.0) continue;
    flux.coeffs[w] = dtn_multiplier(seq, w.length()) * c;
  }
  return flux;
}

std::vector<double> finite_difference_flux(const MeshFunction& f, const DyadicSequence& seq,
                                           int m) {
  const GasketMesh& mesh = *f.mesh;
  if (m < 0 || m > seq.size()) throw std::out_of_range("flux level out of range");
  const int nm = m == 0 ? 0 : seq.exponent(m - 1);
  if (nm > mesh.level) throw std::invalid_argument("mesh too coarse for flux level");
  const double renorm = std::pow(5.0 / 3.0, mesh.level);
  std::vector<double> out;
  out.reserve(static_cast<size_t>(1) << m);
  for (int idx = 0; idx < (1 << m); ++idx) {
    std::vector<int> addr;
    if (m > 0) addr = tilde_F(seq, word_from_index(idx, m)).letters;
    double outward;
    if (m < seq.size()) {
      // descend the F_0 spine of the piece cell; outward there is upward
      std::vector<int> fine = addr;
      fine.insert(fine.end(), static_cast<size_t>(mesh.level - nm), 0);
      CellAddress cell(fine);
      int p = mesh.cell_corner(cell, 0);
      int a = mesh.cell_corner(cell, 1);
      int b = mesh.cell_corner(cell, 2);
      outward = -renorm * (2.0 * f[p] - f[a] - f[b]);
    } else {
      // at the truncation depth the piece cell lies below the cut, so
      // take the stencil from the cell above the cut vertex (outer
      // directed downward, no sign flip)
      int last = addr.back();
      std::vector<int> fine = addr;
      fine.back() = 0;
      fine.insert(fine.end(), static_cast<size_t>(mesh.level - nm), last);
      CellAddress cell(fine);
      int p = mesh.cell_corner(cell, last);
      double s = 2.0 * f[p];
      for (int j = 0; j < 3; ++j)
        if (j != last) s -= f[mesh.cell_corner(cell, j)];
      outward = renorm * s;
    }
    out.push_back(std::pow(2.0, m) * outward);
  }
  return out;
}

std::vector<double> flux_piecewise(const BoundaryFlux& flux, const DyadicSequence& seq, int m) {
  (void)seq;
  std::vector<double> out(static_cast<size_t>(1) << m, flux.constant_part);
  for (const auto& [w, c] : flux.coeffs) {
    // terms at or below the piece resolution have vanishing normal
    // derivative at the level-m piece vertices
    if (c == 0.0 || w.length() >= m) continue;
    for (int idx = 0; idx < (1 << m); ++idx)
      out[static_cast<size_t>(idx)] += c * psi_value(w, idx, m);
  }
  return out;
}

double flux_l2_sq(const BoundaryFlux& flux, const DyadicSequence& seq) {
  const int K = seq.size();
  auto vals = flux_piecewise(flux, seq, K);
  double s = 0.0;
  for (double v : vals) s += v * v;
  return s / static_cast<double>(1 << K);
}

double gauss_green_residual(const Domain& dom, const HaarSpectrum& spec,
                            const MeshFunction& v) {
  MeshFunction h = synthesize(dom, spec);
  double lhs = graph_energy_bilinear(h, v, &dom.mask);
  BoundaryFlux flux = normal_derivative(dom.seq, spec);
  const int K = dom.seq.size();
  auto vals = flux_piecewise(flux, dom.seq, K);
  auto bv = boundary_vertices(dom);
  double rhs = v[dom.q0()] * flux.dn_at_q0;
  for (size_t i = 0; i < bv.size(); ++i) rhs += v[bv[i]] * vals[i] / static_cast<double>(1 << K);
  return std::fabs(lhs - rhs);
}

std::pair<double, bool> check_3_4(const DyadicSequence& seq, const HaarSpectrum& spec) {
  double sum = 0.0;
  bool ok = true;
  for (const auto& [w, c] : spec.coeffs) {
    if (c == 0.0) continue;
    const int m = w.length();
    if (m >= seq.size()) {
      ok = false;
      continue;
    }
    sum += std::pow(2.0, 2 * m) * std::pow(5.0 / 3.0, 2.0 * seq.exponent(m)) * c * c;
  }
  return {sum, ok};
}

}  // namespace gasketbvp
