#ifndef GASKETBVP_RATIOS_HPP
#define GASKETBVP_RATIOS_HPP

#include <vector>

#include "gasketbvp/dyadic.hpp"

namespace gasketbvp {

struct M0Result {
  double value;        // truncated continued fraction m0^(K)
  double error_bound;  // |m0^(K) - m0^(K-1)|, observable truncation surrogate
};

struct RatioTriple {
  double m0, m1, m2;  // m0 + m1 + m2 = 1
};

struct RatioTable {
  std::vector<double> m0_per_level;  // m0(y_0), ..., m0(y_{K-1})
  std::vector<double> est_error;
  int depth;
};

/// Truncated continued fraction for m0(x), evaluated bottom-up from the
/// innermost term 1/(1 + 2 (5/3)^{n_K - n_{K-1}}).  Needs length >= 2.
M0Result m0(const DyadicSequence& seq);

/// m0 with the length-1 tail convention m0 = 0; accepts any sequence.
double m0_truncated(const DyadicSequence& seq);

/// Exact m0 for a sequence whose gap pattern repeats `gaps` forever:
/// fixed point of the induced Moebius map (quadratic), root in [0, 3/10].
double m0_exact_periodic(const std::vector<int>& gaps);

RatioTriple ratio_triple_from_m0(double m0_value);
RatioTriple ratio_triple(const DyadicSequence& seq);

/// |(1 - m0(y)) m0(x) - (1/2)(5/3)^{n_1 - n_2}(1 - m0(x))|.
double consistency_2_26(const DyadicSequence& seq);

/// 6 * 2^m * (5/3)^{n_{m+1}} * (1 - m0(y_m)) / (2 m0(y_m) + 1);
/// the Haar multiplier of the Dirichlet-to-Neumann map at word depth m.
double dtn_multiplier(const DyadicSequence& seq, int m);

RatioTable ratio_table(const DyadicSequence& seq);

}  // namespace gasketbvp

#endif
