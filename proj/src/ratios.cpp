#include "gasketbvp/ratios.hpp"

#include <cmath>
#include <stdexcept>

namespace gasketbvp {

namespace {

// m0^(len) evaluated on the first `len` exponents.
double m0_prefix(const std::vector<int>& gaps, size_t ngaps) {
  double t = 0.0;  // m0 of the length-1 tail
  for (size_t j = ngaps; j-- > 0;) {
    t = 1.0 / (1.0 + 2.0 * std::pow(5.0 / 3.0, gaps[j]) * (1.0 - t));
  }
  return t;
}

}  // namespace

double m0_truncated(const DyadicSequence& seq) {
  auto g = seq.gaps();
  return m0_prefix(g, g.size());
}

M0Result m0(const DyadicSequence& seq) {
  if (seq.size() < 2) throw std::invalid_argument("m0 needs depth >= 2");
  auto g = seq.gaps();
  double v = m0_prefix(g, g.size());
  double prev = m0_prefix(g, g.size() - 1);
  return {v, std::fabs(v - prev)};
}

double m0_exact_periodic(const std::vector<int>& gaps) {
  if (gaps.empty()) throw std::invalid_argument("empty gap pattern");
  // Each stage is the Moebius map t -> 1/(a - b t) with a = 1 + 2(5/3)^g,
  // b = 2(5/3)^g.  Compose the period and solve the fixed point equation.
  double A = 1.0, B = 0.0, C = 0.0, D = 1.0;  // identity, acting as (At+B)/(Ct+D)
  for (size_t j = gaps.size(); j-- > 0;) {
    double b = 2.0 * std::pow(5.0 / 3.0, gaps[j]);
    double a = 1.0 + b;
    // compose t -> 1/(a - b t) after current map: matrix [[0,1],[-b,a]] * [[A,B],[C,D]]
    double nA = C, nB = D;
    double nC = -b * A + a * C, nD = -b * B + a * D;
    A = nA; B = nB; C = nC; D = nD;
  }
  // Fixed point of (At+B)/(Ct+D): C t^2 + (D - A) t - B = 0.
  double qa = C, qb = D - A, qc = -B;
  double disc = qb * qb - 4.0 * qa * qc;
  if (disc < 0.0) throw std::runtime_error("no real fixed point");
  double r1 = (-qb + std::sqrt(disc)) / (2.0 * qa);
  double r2 = (-qb - std::sqrt(disc)) / (2.0 * qa);
  auto in_range = [](double r) { return r >= -1e-15 && r <= 0.3 + 1e-12; };
  if (in_range(r1) && (!in_range(r2) || r1 <= r2)) return r1;
  if (in_range(r2)) return r2;
  throw std::runtime_error("no fixed point in [0, 3/10]");
}

RatioTriple ratio_triple_from_m0(double m) {
  double den = 2.0 * m + 1.0;
  return {m, (1.0 - m * m) / den, (m - m * m) / den};
}

RatioTriple ratio_triple(const DyadicSequence& seq) {
  return ratio_triple_from_m0(m0(seq).value);
}

double consistency_2_26(const DyadicSequence& seq) {
  if (seq.size() < 3) throw std::invalid_argument("consistency check needs depth >= 3");
  double mx = m0(seq).value;
  double my = m0(shift_normalized(seq)).value;
  double lhs = (1.0 - my) * mx;
  double rhs = 0.5 * std::pow(5.0 / 3.0, seq.exponent(0) - seq.exponent(1)) * (1.0 - mx);
  return std::fabs(lhs - rhs);
}

double dtn_multiplier(const DyadicSequence& seq, int m) {
  if (m < 0 || m >= seq.size()) throw std::out_of_range("dtn level out of range");
  double mym = m0_truncated(shift_normalized(seq, m));
  return 6.0 * std::ldexp(1.0, m) * std::pow(5.0 / 3.0, seq.exponent(m)) *
         (1.0 - mym) / (2.0 * mym + 1.0);
}

RatioTable ratio_table(const DyadicSequence& seq) {
  RatioTable t;
  t.depth = seq.size();
  DyadicSequence y = seq;
  for (int j = 0; j < seq.size(); ++j) {
    if (y.size() >= 2) {
      M0Result r = m0(y);
      t.m0_per_level.push_back(r.value);
      t.est_error.push_back(r.error_bound);
    } else {
      t.m0_per_level.push_back(0.0);
      t.est_error.push_back(0.0);
    }
    if (y.size() >= 2) y = shift_normalized(y);
  }
  return t;
}

}  // namespace gasketbvp
