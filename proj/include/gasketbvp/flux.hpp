#ifndef GASKETBVP_FLUX_HPP
#define GASKETBVP_FLUX_HPP

#include <map>
#include <utility>
#include <vector>

#include "gasketbvp/harmonics.hpp"

namespace gasketbvp {

/// Normal derivative of a harmonic function on S(x), as a Haar series:
/// dn h = constant_part * 1 + sum coeffs[omega] * psi_omega.
struct BoundaryFlux {
  double constant_part = 0.0;          // 2 (b-a) (5/3)^{n1} (1 - m0)
  std::map<Word, double> coeffs;       // dtn_multiplier(|omega|) * c_omega
  double dn_at_q0 = 0.0;               // 2 (5/3)^{n1} (1 - m0) (a - b)
};

/// Dirichlet-to-Neumann map as a Haar multiplier (closed form, exact at
/// truncation).
BoundaryFlux normal_derivative(const DyadicSequence& seq, const HaarSpectrum& spec);

/// Level-m approximant of the limit defining dn u: one value per word of
/// length m (word-lex order), computed with the renormalized two-point
/// corner stencil at F~_omega q0.
std::vector<double> finite_difference_flux(const MeshFunction& f, const DyadicSequence& seq,
                                           int m);

/// Evaluate a BoundaryFlux as piecewise constants on the 2^m pieces.
std::vector<double> flux_piecewise(const BoundaryFlux& flux, const DyadicSequence& seq, int m);

/// || dn h ||_2^2 at truncation resolution.
double flux_l2_sq(const BoundaryFlux& flux, const DyadicSequence& seq);

/// | E(h, v) - v(q0) dn h(q0) - int_S v dn h dmu | for h = synthesize(spec).
double gauss_green_residual(const Domain& dom, const HaarSpectrum& spec,
                            const MeshFunction& v);

/// Eq-3.4 quantity: sum 2^{2m} (5/3)^{2 n_{m+1}} |c_omega|^2; the bool is
/// false when the spectrum has words at or beyond the truncation depth.
std::pair<double, bool> check_3_4(const DyadicSequence& seq, const HaarSpectrum& spec);

}  // namespace gasketbvp

#endif
