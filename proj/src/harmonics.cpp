#include "gasketbvp/harmonics.hpp"

#include <cmath>
#include <stdexcept>

namespace gasketbvp {

namespace {

struct Builder {
  const GasketMesh& mesh;
  MeshFunction& u;
  const std::vector<int>& exps;
  std::vector<double> m;  // m0(y_j) for j = 0..K-1

  int gap(int j) const { return j == 0 ? exps[0] : exps[size_t(j)] - exps[size_t(j) - 1]; }
  int depth() const { return static_cast<int>(exps.size()); }

  // alpha + beta * h0^{y_j} on the piece rooted at `prefix`
  void h0_affine(std::vector<int> prefix, int j, double alpha, double beta) {
    const int g = gap(j);
    std::vector<int> top = prefix;
    top.insert(top.end(), static_cast<size_t>(g), 0);
    fill_harmonic_cell(u, top, {alpha + beta, alpha + beta * m[size_t(j)], alpha + beta * m[size_t(j)]});
    if (j + 1 >= depth()) return;
    prefix.insert(prefix.end(), static_cast<size_t>(g - 1), 0);
    for (int w : {1, 2}) {
      prefix.push_back(w);
      h0_affine(prefix, j + 1, alpha, beta * m[size_t(j)]);
      prefix.pop_back();
    }
  }

  // scale * h1^{y_j} on the piece rooted at `prefix`
  void h1_piece(std::vector<int> prefix, int j, double scale) {
    const int g = gap(j);
    const double d = (1.0 - m[size_t(j)]) / (2.0 * m[size_t(j)] + 1.0);
    std::vector<int> top = prefix;
    top.insert(top.end(), static_cast<size_t>(g), 0);
    fill_harmonic_cell(u, top, {0.0, scale * d, -scale * d});
    if (j + 1 >= depth()) return;
    prefix.insert(prefix.end(), static_cast<size_t>(g - 1), 0);
    prefix.push_back(1);
    h0_affine(prefix, j + 1, scale, scale * (d - 1.0));
    prefix.back() = 2;
    h0_affine(prefix, j + 1, -scale, scale * (1.0 - d));
  }
};

Builder make_builder(const Domain& dom, MeshFunction& u) {
  Builder b{*dom.mesh, u, dom.seq.exponents(), {}};
  b.m.resize(dom.seq.exponents().size());
  DyadicSequence y = dom.seq;
  for (size_t j = 0; j < b.m.size(); ++j) {
    b.m[j] = m0_truncated(y);
    if (y.size() >= 2) y = shift_normalized(y);
  }
  return b;
}

}  // namespace

Domain::Domain(DyadicSequence s, int level)
    : seq(std::move(s)), mesh(std::make_shared<GasketMesh>(build_mesh(level))) {
  if (seq.exponents().back() > level)
    throw std::invalid_argument("mesh level below truncation depth n_K");
  mask = mask_upper(*mesh, seq);
}

int Domain::q0() const { return mesh->vertex_at(0, 2 << mesh->level); }

MeshFunction eval_h0(const Domain& dom) {
  MeshFunction u(*dom.mesh);
  auto b = make_builder(dom, u);
  b.h0_affine({}, 0, 0.0, 1.0);
  return u;
}

MeshFunction eval_h1(const Domain& dom) {
  MeshFunction u(*dom.mesh);
  auto b = make_builder(dom, u);
  b.h1_piece({}, 0, 1.0);
  return u;
}

MeshFunction eval_h_omega(const Domain& dom, const Word& omega) {
  const int m = omega.length();
  if (m >= dom.seq.size()) throw std::invalid_argument("word too deep for truncation");
  MeshFunction u(*dom.mesh);
  auto b = make_builder(dom, u);
  if (m == 0) {
    b.h1_piece({}, 0, 1.0);
  } else {
    b.h1_piece(tilde_F(dom.seq, omega).letters, m, std::pow(2.0, m / 2.0));
  }
  return u;
}

double energy_h0(const DyadicSequence& seq) {
  // bottom-up iteration of E(h0^x) = 2 (5/3)^{n1} ((m0-1)^2 + m0^2 E(h0^y)),
  // exact at truncation
  std::vector<std::pair<int, double>> stages;  // (n1, m0) per shift level
  DyadicSequence y = seq;
  while (y.size() >= 2) {
    stages.emplace_back(y.exponent(0), m0_truncated(y));
    y = shift_normalized(y);
  }
  double e = 2.0 * std::pow(5.0 / 3.0, y.exponent(0));
  for (auto it = stages.rbegin(); it != stages.rend(); ++it) {
    auto [n1, m] = *it;
    e = 2.0 * std::pow(5.0 / 3.0, n1) * ((m - 1.0) * (m - 1.0) + m * m * e);
  }
  return e;
}

double energy_h0_series(const DyadicSequence& seq) {
  const double m = m0_truncated(seq);
  const int n1 = seq.exponent(0);
  double sum = 0.0;
  for (int j = 1; j <= seq.size(); ++j)
    sum += std::pow(2.0, 2 - j) * std::pow(5.0 / 3.0, 2 * n1 - seq.exponent(j - 1));
  return (1.0 - m) * (1.0 - m) * sum;
}

double energy_h1(const DyadicSequence& seq) {
  const double m = m0_truncated(seq);
  const double n1 = seq.exponent(0);
  double top = 6.0 * std::pow((1.0 - m) / (2.0 * m + 1.0), 2) * std::pow(5.0 / 3.0, n1);
  if (seq.size() == 1) return top;
  double rest = 2.0 * std::pow(3.0 * m / (2.0 * m + 1.0), 2) * std::pow(5.0 / 3.0, n1) *
                energy_h0(shift_normalized(seq));
  return top + rest;
}

double energy_h_omega(const DyadicSequence& seq, const Word& omega) {
  const int m = omega.length();
  if (m >= seq.size()) throw std::invalid_argument("word too deep for truncation");
  if (m == 0) return energy_h1(seq);
  return std::pow(2.0, m) * std::pow(5.0 / 3.0, seq.exponent(m - 1)) *
         energy_h1(shift_normalized(seq, m));
}

void fill_h0_piece(const Domain& dom, MeshFunction& u, const std::vector<int>& prefix,
                   int stage, double alpha, double beta) {
  if (stage < 0 || stage >= dom.seq.size())
    throw std::out_of_range("stage beyond truncation depth");
  auto b = make_builder(dom, u);
  b.h0_affine(prefix, stage, alpha, beta);
}

MeshFunction synthesize(const Domain& dom, const HaarSpectrum& spec) {
  MeshFunction h0 = eval_h0(dom);
  MeshFunction u(*dom.mesh);
  for (int v = 0; v < dom.mesh->vertex_count(); ++v)
    if (dom.mask.in_domain(v)) u[v] = spec.a * h0[v] + spec.b * (1.0 - h0[v]);
  for (const auto& [w, c] : spec.coeffs) {
    if (c == 0.0) continue;
    MeshFunction hw = eval_h_omega(dom, w);
    for (int v = 0; v < dom.mesh->vertex_count(); ++v)
      if (dom.mask.in_domain(v)) u[v] += c * hw[v];
  }
  return u;
}

std::vector<int> boundary_vertices(const Domain& dom) {
  const int K = dom.seq.size();
  std::vector<int> out;
  out.reserve(static_cast<size_t>(1) << K);
  std::vector<int> letters(static_cast<size_t>(K), 1);
  for (int idx = 0; idx < (1 << K); ++idx) {
    for (int k = 0; k < K; ++k)
      letters[static_cast<size_t>(k)] = ((idx >> (K - 1 - k)) & 1) ? 2 : 1;
    out.push_back(dom.mesh->cell_corner(tilde_F(dom.seq, Word(letters)), 0));
  }
  return out;
}

HaarSpectrum boundary_spectrum(const Domain& dom, const MeshFunction& u) {
  const int K = dom.seq.size();
  auto bv = boundary_vertices(dom);
  const int n = 1 << K;
  std::vector<double> prefix(static_cast<size_t>(n) + 1, 0.0);
  for (int i = 0; i < n; ++i)
    prefix[static_cast<size_t>(i) + 1] = prefix[static_cast<size_t>(i)] + u[bv[static_cast<size_t>(i)]];
  HaarSpectrum spec;
  spec.a = u[dom.q0()];
  spec.b = prefix[static_cast<size_t>(n)] / n;
  for (int m = 0; m < K; ++m) {
    int block = n >> m, half = block >> 1;
    for (int p = 0; p < (1 << m); ++p) {
      int lo = p * block;
      double left = prefix[static_cast<size_t>(lo + half)] - prefix[static_cast<size_t>(lo)];
      double right = prefix[static_cast<size_t>(lo + block)] - prefix[static_cast<size_t>(lo + half)];
      double c = std::pow(2.0, m / 2.0) * (left - right) / n;
      std::vector<int> letters(static_cast<size_t>(m));
      for (int k = 0; k < m; ++k)
        letters[static_cast<size_t>(k)] = ((p >> (m - 1 - k)) & 1) ? 2 : 1;
      spec.coeffs[Word(letters)] = c;
    }
  }
  return spec;
}

EnergyReport energy_report(const DyadicSequence& seq, const HaarSpectrum& spec) {
  EnergyReport r{};
  const double ab = spec.a - spec.b;
  r.exact_energy = ab * ab * energy_h0(seq);
  r.estimate_2_29 = std::pow(5.0 / 3.0, seq.exponent(0)) * ab * ab;
  r.l2_estimate = std::pow(1.0 / 3.0, seq.exponent(0)) * (spec.a * spec.a + spec.b * spec.b);
  for (const auto& [w, c] : spec.coeffs) {
    if (c == 0.0) continue;
    const int m = w.length();
    r.exact_energy += c * c * energy_h_omega(seq, w);
    r.estimate_2_29 += std::pow(2.0, m) * std::pow(5.0 / 3.0, seq.exponent(m)) * c * c;
    r.l2_estimate += std::pow(2.0, m) * std::pow(1.0 / 3.0, seq.exponent(m)) * c * c;
  }
  return r;
}

}  // namespace gasketbvp
