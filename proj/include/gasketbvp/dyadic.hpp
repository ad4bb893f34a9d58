#ifndef GASKETBVP_DYADIC_HPP
#define GASKETBVP_DYADIC_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace gasketbvp {

/// Truncated dyadic exponent sequence 0 < n_1 < n_2 < ... representing
/// x = sum_k 2^{-n_k}.  All downstream objects depend on x only through
/// this sequence; floating point input is a convenience constructor.
class DyadicSequence {
 public:
  DyadicSequence(std::vector<int> exponents, int truncation_depth);

  /// Greedy binary expansion of x in (0,1].  Terminating expansions are
  /// kept terminating (0.65625 -> {1,3,5}); x = 1 is forced to the
  /// all-ones expansion {1,2,...,K} since no finite one exists.
  static DyadicSequence from_value(double x, int depth);

  /// n_k = first + (k-1)*step.
  static DyadicSequence arithmetic(int first, int step, int depth);

  /// Repeats the block {p_1..p_r} shifted by p_r: n_{jr+i} = p_i + j*p_r.
  /// periodic({1}, K) is x = 1; periodic({1,3}, K) gives gaps 1,2,1,2,...
  static DyadicSequence periodic(const std::vector<int>& block, int depth);

  const std::vector<int>& exponents() const { return exps_; }
  int size() const { return static_cast<int>(exps_.size()); }
  int depth() const { return depth_; }
  int exponent(int k) const { return exps_.at(static_cast<size_t>(k)); }

  /// Partial sum x_[m]; value() is x_[size()].
  double partial_sum(int m) const;
  double value() const { return partial_sum(size()); }

  /// Gap sequence n_{k+1} - n_k, length size()-1.
  std::vector<int> gaps() const;

  /// True when the periodic block pattern would reproduce this sequence.
  bool is_periodic_block(const std::vector<int>& block) const;

  bool operator==(const DyadicSequence& o) const { return exps_ == o.exps_; }

 private:
  std::vector<int> exps_;
  int depth_;
};

/// Word over {1,2} indexing Haar functions and dyadic boundary pieces.
struct Word {
  std::vector<int> letters;

  Word() = default;
  explicit Word(std::vector<int> ls);
  static Word parse(const std::string& digits);  // e.g. "121"

  int length() const { return static_cast<int>(letters.size()); }
  std::string str() const;
  bool operator==(const Word& o) const { return letters == o.letters; }
  bool operator<(const Word& o) const;
};

/// Cell address over {0,1,2}; letters compose left to right.
struct CellAddress {
  std::vector<int> letters;

  CellAddress() = default;
  explicit CellAddress(std::vector<int> ls);

  int level() const { return static_cast<int>(letters.size()); }
  std::string str() const;  // comma separated digits
  bool operator==(const CellAddress& o) const { return letters == o.letters; }
};

/// The sequence for y = 2^{n_1} R x: {n_{k+1} - n_1}.
DyadicSequence shift_normalized(const DyadicSequence& seq);

/// m-fold shift, y_m = 2^{n_m} R^m x.
DyadicSequence shift_normalized(const DyadicSequence& seq, int times);

/// F~_omega = F_0^{n_1-1} F_{w_1} F_0^{n_2-n_1-1} F_{w_2} ...; the level
/// n_m cell meeting S(x) in the piece S_omega(x).
CellAddress tilde_F(const DyadicSequence& seq, const Word& omega);

/// The companion cell sharing the vertex F~_omega(q_0); F_0^{n_1} for
/// |omega| = 1.
CellAddress tilde_tilde_F(const DyadicSequence& seq, const Word& omega);

/// Smallest N >= 2 such that the truncated prefix contains no N
/// consecutive integers; nullopt when the maximal run touches the
/// truncation boundary (undecidable at this depth).
std::optional<int> nonconsecutive_bound(const DyadicSequence& seq);

/// Unique positive root of 2 - 2^s - 2^{-N s} = 0 (bisection to 1e-12).
double hausdorff_dimension(int N);

}  // namespace gasketbvp

#endif
