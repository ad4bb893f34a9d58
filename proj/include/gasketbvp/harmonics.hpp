#ifndef GASKETBVP_HARMONICS_HPP
#define GASKETBVP_HARMONICS_HPP

#include <map>
#include <memory>
#include <vector>

#include "gasketbvp/dyadic.hpp"
#include "gasketbvp/mesh.hpp"
#include "gasketbvp/ratios.hpp"

namespace gasketbvp {

/// Omega_x at truncation depth K, discretized at a mesh level L >= n_K.
struct Domain {
  DyadicSequence seq;
  std::shared_ptr<GasketMesh> mesh;
  DomainMask mask;

  int level() const { return mesh->level; }
  int q0() const;                       // vertex id of the top corner
  Domain(DyadicSequence s, int level);
};

/// Haar spectrum of boundary data: value a at q0, mean b over S(x),
/// coefficients c_omega for words up to the truncation depth.
struct HaarSpectrum {
  double a = 0.0;
  double b = 0.0;
  std::map<Word, double> coeffs;
};

struct EnergyReport {
  double exact_energy;   // Eq-2.31-style orthogonal sum
  double estimate_2_29;  // comparable quantity
  double l2_estimate;
};

/// Harmonic h0: 1 at q0, 0 on S(x); built by the recursive cell
/// construction (top cell harmonic with corner values (1, m0, m0),
/// scaled copies below), which is exact at truncation.
MeshFunction eval_h0(const Domain& dom);

/// Harmonic h1: 0 at q0, +/-1 on the two halves of S(x).
MeshFunction eval_h1(const Domain& dom);

/// Haar-generator harmonic h_omega: supported in the cell F~_omega,
/// equal to 2^{m/2} h1^{y_m} there, zero elsewhere.  Needs |omega| < K.
MeshFunction eval_h_omega(const Domain& dom, const Word& omega);

/// Closed-form energies (exact at truncation).
double energy_h0(const DyadicSequence& seq);
double energy_h1(const DyadicSequence& seq);
double energy_h_omega(const DyadicSequence& seq, const Word& omega);

/// Closed form of the series representation for E(h0); equals
/// energy_h0 and is kept as an independent cross-check.
double energy_h0_series(const DyadicSequence& seq);

/// alpha + beta h0^{y_stage} written on the piece rooted at `prefix`
/// (a cell of level n_stage); building block for the Green's-function
/// splines.  Needs stage < K.
void fill_h0_piece(const Domain& dom, MeshFunction& u, const std::vector<int>& prefix,
                   int stage, double alpha, double beta);

/// a h0 + b (1 - h0) + sum c_omega h_omega on the domain.
MeshFunction synthesize(const Domain& dom, const HaarSpectrum& spec);

/// Boundary vertices b_omega for the 2^K words, in word-lex order.
std::vector<int> boundary_vertices(const Domain& dom);

/// Read the trace of u on the 2^K boundary atoms and project back onto
/// the Haar basis (exact at truncation).
HaarSpectrum boundary_spectrum(const Domain& dom, const MeshFunction& u);

EnergyReport energy_report(const DyadicSequence& seq, const HaarSpectrum& spec);

}  // namespace gasketbvp

#endif
