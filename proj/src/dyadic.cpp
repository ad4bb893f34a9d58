#include "gasketbvp/dyadic.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gasketbvp {

DyadicSequence::DyadicSequence(std::vector<int> exponents, int truncation_depth)
    : exps_(std::move(exponents)), depth_(truncation_depth) {
  if (depth_ < 1) throw std::invalid_argument("truncation depth must be >= 1");
  if (exps_.empty()) throw std::invalid_argument("empty exponent sequence");
  if (static_cast<int>(exps_.size()) > depth_)
    throw std::invalid_argument("sequence longer than truncation depth");
  int prev = 0;
  for (int n : exps_) {
    if (n <= prev) throw std::invalid_argument("exponents must be strictly increasing and >= 1");
    prev = n;
  }
}

DyadicSequence DyadicSequence::from_value(double x, int depth) {
  if (!(x > 0.0) || x > 1.0) throw std::invalid_argument("x must lie in (0, 1]");
  if (depth < 1) throw std::invalid_argument("depth must be >= 1");
  std::vector<int> exps;
  double rem = x;
  int n = 0;
  while (static_cast<int>(exps.size()) < depth && rem > 0.0) {
    ++n;
    double p = std::ldexp(1.0, -n);
    if (p <= rem) {
      exps.push_back(n);
      rem -= p;
    }
  }
  if (exps.empty()) throw std::invalid_argument("x too small for requested depth");
  return DyadicSequence(std::move(exps), depth);
}

DyadicSequence DyadicSequence::arithmetic(int first, int step, int depth) {
  if (first < 1 || step < 1) throw std::invalid_argument("arithmetic pattern needs first, step >= 1");
  std::vector<int> exps(static_cast<size_t>(depth));
  for (int k = 0; k < depth; ++k) exps[static_cast<size_t>(k)] = first + k * step;
  return DyadicSequence(std::move(exps), depth);
}

DyadicSequence DyadicSequence::periodic(const std::vector<int>& block, int depth) {
  if (block.empty()) throw std::invalid_argument("empty periodic block");
  int prev = 0;
  for (int p : block) {
    if (p <= prev) throw std::invalid_argument("periodic block must be strictly increasing and >= 1");
    prev = p;
  }
  std::vector<int> exps;
  exps.reserve(static_cast<size_t>(depth));
  int shift = 0;
  while (static_cast<int>(exps.size()) < depth) {
    for (int p : block) {
      if (static_cast<int>(exps.size()) >= depth) break;
      exps.push_back(p + shift);
    }
    shift += block.back();
  }
  return DyadicSequence(std::move(exps), depth);
}

double DyadicSequence::partial_sum(int m) const {
  if (m < 0 || m > size()) throw std::out_of_range("partial sum index");
  double s = 0.0;
  for (int k = 0; k < m; ++k) s += std::ldexp(1.0, -exps_[static_cast<size_t>(k)]);
  return s;
}

std::vector<int> DyadicSequence::gaps() const {
  std::vector<int> g;
  g.reserve(exps_.size() - 1);
  for (size_t k = 1; k < exps_.size(); ++k) g.push_back(exps_[k] - exps_[k - 1]);
  return g;
}

bool DyadicSequence::is_periodic_block(const std::vector<int>& block) const {
  DyadicSequence p = periodic(block, size());
  return p.exps_ == exps_;
}

Word::Word(std::vector<int> ls) : letters(std::move(ls)) {
  for (int l : letters)
    if (l != 1 && l != 2) throw std::invalid_argument("word letters must be 1 or 2");
}

Word Word::parse(const std::string& digits) {
  std::vector<int> ls;
  ls.reserve(digits.size());
  for (char c : digits) {
    if (c != '1' && c != '2') throw std::invalid_argument("word letters must be 1 or 2");
    ls.push_back(c - '0');
  }
  return Word(std::move(ls));
}

std::string Word::str() const {
  std::string s;
  for (int l : letters) s.push_back(static_cast<char>('0' + l));
  return s;
}

bool Word::operator<(const Word& o) const {
  return letters.size() != o.letters.size() ? letters.size() < o.letters.size()
                                            : letters < o.letters;
}

CellAddress::CellAddress(std::vector<int> ls) : letters(std::move(ls)) {
  for (int l : letters)
    if (l < 0 || l > 2) throw std::invalid_argument("cell letters must be 0, 1 or 2");
}

std::string CellAddress::str() const {
  std::ostringstream os;
  for (size_t i = 0; i < letters.size(); ++i) {
    if (i) os << ',';
    os << letters[i];
  }
  return os.str();
}

DyadicSequence shift_normalized(const DyadicSequence& seq) {
  if (seq.size() < 2) throw std::invalid_argument("shift needs a sequence of length >= 2");
  const auto& e = seq.exponents();
  std::vector<int> out;
  out.reserve(e.size() - 1);
  for (size_t k = 1; k < e.size(); ++k) out.push_back(e[k] - e[0]);
  return DyadicSequence(std::move(out), std::max(1, seq.depth() - 1));
}

DyadicSequence shift_normalized(const DyadicSequence& seq, int times) {
  DyadicSequence y = seq;
  for (int i = 0; i < times; ++i) y = shift_normalized(y);
  return y;
}

CellAddress tilde_F(const DyadicSequence& seq, const Word& omega) {
  const int m = omega.length();
  if (m < 1) throw std::invalid_argument("tilde_F needs a nonempty word");
  if (m > seq.size()) throw std::invalid_argument("word deeper than truncation");
  std::vector<int> addr;
  addr.reserve(static_cast<size_t>(seq.exponent(m - 1)));
  int prev = 0;
  for (int k = 0; k < m; ++k) {
    const int nk = seq.exponent(k);
    addr.insert(addr.end(), static_cast<size_t>(nk - prev - 1), 0);
    addr.push_back(omega.letters[static_cast<size_t>(k)]);
    prev = nk;
  }
  return CellAddress(std::move(addr));
}

CellAddress tilde_tilde_F(const DyadicSequence& seq, const Word& omega) {
  const int m = omega.length();
  if (m < 1) throw std::invalid_argument("tilde_tilde_F needs a nonempty word");
  if (m > seq.size()) throw std::invalid_argument("word deeper than truncation");
  std::vector<int> addr;
  if (m == 1) {
    addr.assign(static_cast<size_t>(seq.exponent(0)), 0);
  } else {
    Word prefix(std::vector<int>(omega.letters.begin(), omega.letters.end() - 1));
    addr = tilde_F(seq, prefix).letters;
    addr.insert(addr.end(), static_cast<size_t>(seq.exponent(m - 1) - seq.exponent(m - 2)), 0);
  }
  return CellAddress(std::move(addr));
}

std::optional<int> nonconsecutive_bound(const DyadicSequence& seq) {
  const auto& e = seq.exponents();
  int max_run = 1, run = 1, tail_run = 1;
  for (size_t k = 1; k < e.size(); ++k) {
    run = (e[k] == e[k - 1] + 1) ? run + 1 : 1;
    max_run = std::max(max_run, run);
  }
  tail_run = run;
  // A maximal run ending at the truncation boundary may continue beyond it.
  if (tail_run >= 2 && tail_run >= max_run) return std::nullopt;
  return max_run + 1;
}

double hausdorff_dimension(int N) {
  if (N < 2) throw std::invalid_argument("N must be >= 2");
  auto f = [N](double s) { return 2.0 - std::pow(2.0, s) - std::pow(2.0, -double(N) * s); };
  // f(0) = 0 and f'(0) > 0; the positive root lies in (0, 1).
  double lo = 1e-9, hi = 1.0;
  if (f(lo) <= 0.0 || f(hi) >= 0.0) throw std::runtime_error("bisection bracket failed");
  while (hi - lo > 1e-12) {
    double mid = 0.5 * (lo + hi);
    (f(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace gasketbvp
