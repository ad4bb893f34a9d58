#ifndef GASKETBVP_EXTENSION_HPP
#define GASKETBVP_EXTENSION_HPP

#include <vector>

#include "gasketbvp/harmonics.hpp"

namespace gasketbvp {

struct GlueReport {
  double total = 0.0;          // E_SG of the combined function
  double upper = 0.0;          // energy over the upper mask
  double lower = 0.0;          // energy over the lower mask
  std::vector<double> strips;  // E^{(n_m)}_{S_m}, m = 1..K
};

struct GluedFunction {
  MeshFunction combined;
  GlueReport report;
};

/// Glue finite-energy pieces across S(x).  Throws when the traces at
/// the boundary atoms disagree beyond `tol`.
GluedFunction glue(const Domain& dom, const MeshFunction& upper,
                   const MeshFunction& lower, double tol = 1e-10);

/// Trace of an upper function onto S(x), projected on the Haar basis up
/// to (excluding) words of length `depth`.
HaarSpectrum trace(const Domain& dom, const MeshFunction& upper, int depth);

/// Extension of h_omega below S(x): constant +-2^{m/2} on the portions
/// of the run cells below the line, harmonic decay to zero on the two
/// sibling cells of each, zero elsewhere.  Needs mesh level >= n_K + 1
/// and a finite nonconsecutive bound.
MeshFunction extend_basis(const Domain& dom, const Word& omega);

/// Same construction for 1 - h0 (trace identically 1 on S(x)).
MeshFunction extend_one_minus_h0(const Domain& dom);

/// Closed form of the lower energy added by extend_basis for a word of
/// length m (also the 1 - h0 case with m = 0): 2^{m+r+2} (5/3)^{n_{m+r}+1}
/// where r is the consecutive run length of exponents starting at n_{m+1}.
double extension_added_energy(const DyadicSequence& seq, int m);

struct ExtensionReport {
  MeshFunction extended;
  double upper_energy = 0.0;  // E_{Omega+} of the input
  double total_energy = 0.0;  // E_SG of the extension
  double ratio = 0.0;         // total / upper (0 when upper is 0)
};

/// Linear extension operator: a h0 + b (1-h0)~ + sum c_omega h~_omega.
ExtensionReport extend(const Domain& dom, const HaarSpectrum& spec);

/// Brute-force minimal-energy extension: keeps `upper` on the domain
/// and solves the Dirichlet problem below S(x) with the atom values as
/// data and natural (free) condition at the bottom corners q1, q2.
MeshFunction minimal_lower_extension(const Domain& dom, const MeshFunction& upper);

struct ObstructionRow {
  int n;         // consecutive-run length, seq = {1, ..., n}
  double e_min;  // minimal total energy of an extension of h1
  double ratio;  // e_min(n) / e_min(n-1), 0 for the first row
};

/// Growth of the minimal extension energy of h1 for x with n_j = j,
/// j <= n, for n = 2..max_n.  Ratios approach 5/3.
std::vector<ObstructionRow> obstruction_experiment(int max_n);

}  // namespace gasketbvp

#endif
