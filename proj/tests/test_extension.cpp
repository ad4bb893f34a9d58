#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "gasketbvp/extension.hpp"

using namespace gasketbvp;

namespace {

// level-l graph energy split into cells above / below / straddling the line
struct CoarseSplit {
  double up = 0.0, low = 0.0, strip = 0.0;
  int strip_cells = 0;
};

void coarse_walk(const MeshFunction& f, int t, std::vector<int>& addr, int l, CoarseSplit& out) {
  if ((int)addr.size() == l) {
    const GasketMesh& mesh = *f.mesh;
    auto p = cell_corner_coords(mesh, addr);
    double fv[3];
    for (int j = 0; j < 3; ++j) fv[j] = f[mesh.vertex_at(p[j][0], p[j][1])];
    double e = (fv[0] - fv[1]) * (fv[0] - fv[1]) + (fv[0] - fv[2]) * (fv[0] - fv[2]) +
               (fv[1] - fv[2]) * (fv[1] - fv[2]);
    e *= std::pow(5.0 / 3.0, l);
    if (p[1][1] >= t) {
      out.up += e;
    } else if (p[0][1] <= t) {
      out.low += e;
    } else {
      out.strip += e;
      ++out.strip_cells;
    }
    return;
  }
  for (int w = 0; w < 3; ++w) {
    addr.push_back(w);
    coarse_walk(f, t, addr, l, out);
    addr.pop_back();
  }
}

CoarseSplit coarse_split(const MeshFunction& f, int t, int l) {
  CoarseSplit out;
  std::vector<int> addr;
  coarse_walk(f, t, addr, l, out);
  return out;
}

// mesh-level energy restricted to the strip cells F~_w, |w| = m
double strip_fine_energy(const MeshFunction& f, const Domain& dom, int m) {
  const GasketMesh& mesh = *f.mesh;
  double sum = 0.0;
  std::vector<int> letters((size_t)m, 1);
  for (int idx = 0; idx < (1 << m); ++idx) {
    for (int k = 0; k < m; ++k) letters[(size_t)k] = ((idx >> (m - 1 - k)) & 1) ? 2 : 1;
    std::vector<int> addr = tilde_F(dom.seq, Word(letters)).letters;
    // walk the subtree of addresses below the strip cell
    std::vector<std::vector<int>> stack{addr};
    while (!stack.empty()) {
      auto a = std::move(stack.back());
      stack.pop_back();
      if ((int)a.size() == mesh.level) {
        auto p = cell_corner_coords(mesh, a);
        double fv[3];
        for (int j = 0; j < 3; ++j) fv[j] = f[mesh.vertex_at(p[j][0], p[j][1])];
        sum += (fv[0] - fv[1]) * (fv[0] - fv[1]) + (fv[0] - fv[2]) * (fv[0] - fv[2]) +
               (fv[1] - fv[2]) * (fv[1] - fv[2]);
        continue;
      }
      for (int w = 0; w < 3; ++w) {
        auto b = a;
        b.push_back(w);
        stack.push_back(std::move(b));
      }
    }
  }
  return sum * std::pow(5.0 / 3.0, mesh.level);
}

HaarSpectrum random_spectrum(std::mt19937_64& rng, const DyadicSequence& seq, int nterms) {
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  HaarSpectrum s;
  s.a = unif(rng);
  s.b = unif(rng);
  for (int t = 0; t < nterms; ++t) {
    int m = static_cast<int>(rng() % static_cast<unsigned>(seq.size()));
    std::vector<int> letters(static_cast<size_t>(m));
    for (auto& l : letters) l = 1 + static_cast<int>(rng() % 2);
    s.coeffs[Word(letters)] = unif(rng);
  }
  return s;
}

}  // namespace

TEST_CASE("extension golden values") {
  // N = 2, n1 = 1: the empty-word extension adds exactly 8 (5/3)^2
  DyadicSequence seq({1, 3}, 2);
  Domain dom(seq, 5);
  auto ext = extend_basis(dom, Word());
  double upper = graph_energy(ext, &dom.mask);
  CHECK(upper == doctest::Approx(energy_h1(seq)).epsilon(1e-10));
  double added = graph_energy(ext) - upper;
  CHECK(added == doctest::Approx(8.0 * std::pow(5.0 / 3.0, 2)).epsilon(1e-10));
  CHECK(extension_added_energy(seq, 0) ==
        doctest::Approx(8.0 * std::pow(5.0 / 3.0, 2)).epsilon(1e-12));

  // restriction to the domain is untouched
  auto h = eval_h_omega(dom, Word());
  for (int v = 0; v < dom.mesh->vertex_count(); ++v)
    if (dom.mask.in_domain(v)) CHECK(ext[v] == doctest::Approx(h[v]).epsilon(1e-12));

  // 1 - h0 with n1 > 1: added energy exactly 8 (5/3)^{n1+1}
  DyadicSequence s2({3, 5}, 2);
  Domain d2(s2, 6);
  auto e2 = extend_one_minus_h0(d2);
  double up2 = graph_energy(e2, &d2.mask);
  CHECK(up2 == doctest::Approx(energy_h0(s2)).epsilon(1e-10));
  CHECK(graph_energy(e2) - up2 ==
        doctest::Approx(8.0 * std::pow(5.0 / 3.0, 4)).epsilon(1e-10));
  auto h0 = eval_h0(d2);
  for (int v = 0; v < d2.mesh->vertex_count(); ++v)
    if (d2.mask.in_domain(v)) CHECK(e2[v] == doctest::Approx(1.0 - h0[v]).epsilon(1e-12));
}

TEST_CASE("added energy closed form and 4.15 bracket") {
  std::mt19937_64 rng(424);
  double worst = 0.0;
  for (int trial = 0; trial < 30; ++trial) {
    // random sequences with runs of at most 2 consecutive exponents and
    // a clean (gap >= 2) tail, so the bound N = 3 applies throughout
    int len = 3 + (int)(rng() % 2);
    std::vector<int> exps{1 + (int)(rng() % 3)};
    int prevgap = 2;
    for (int k = 1; k < len; ++k) {
      int g = (prevgap >= 2 && k + 1 < len && (rng() % 2)) ? 1 : 2 + (int)(rng() % 2);
      prevgap = g;
      exps.push_back(exps.back() + g);
    }
    DyadicSequence seq(exps, len);
    if (!nonconsecutive_bound(seq)) continue;
    Domain dom(seq, exps.back() + 2);
    int m = (int)(rng() % (unsigned)(len - 1));
    std::vector<int> letters((size_t)m);
    for (auto& l : letters) l = 1 + (int)(rng() % 2);
    Word w(letters);
    auto ext = extend_basis(dom, w);
    double added = graph_energy(ext) - graph_energy(ext, &dom.mask);
    CHECK(added == doctest::Approx(extension_added_energy(seq, m)).epsilon(1e-9));
    double denom = std::pow(2.0, m) * std::pow(5.0 / 3.0, seq.exponent(m));
    worst = std::max(worst, added / denom);
  }
  // Eq-4.15-style bracket: one constant for all samples with bound N = 3
  CHECK(worst > 0.0);
  CHECK(worst <= 4.0 * std::pow(10.0 / 3.0, 2) + 1e-9);
}

TEST_CASE("extended basis energy orthogonality") {
  DyadicSequence seq({1, 3, 5}, 3);
  Domain dom(seq, 7);
  std::vector<MeshFunction> fns;
  fns.push_back(eval_h0(dom));  // already an extension (zero below)
  fns.push_back(extend_one_minus_h0(dom));
  for (const std::string& ws : {"", "1", "2", "11", "21"})
    fns.push_back(extend_basis(dom, Word::parse(ws)));
  for (size_t i = 0; i < fns.size(); ++i)
    for (size_t j = i + 1; j < fns.size(); ++j) {
      if (i == 0 && j == 1) continue;  // h0 and (1-h0)~ are not orthogonal
      double cross = graph_energy_bilinear(fns[i], fns[j]);
      double scale = std::sqrt(graph_energy(fns[i]) * graph_energy(fns[j]));
      CHECK(std::fabs(cross) < 1e-8 * scale);
    }
}

TEST_CASE("extension operator") {
  DyadicSequence seq({1, 3, 5}, 3);
  Domain dom(seq, 7);
  std::mt19937_64 rng(31);

  HaarSpectrum zero;
  auto rz = extend(dom, zero);
  CHECK(rz.total_energy == doctest::Approx(0.0));

  double worst = 0.0;
  for (int trial = 0; trial < 6; ++trial) {
    auto spec = random_spectrum(rng, seq, 4);
    auto rep = extend(dom, spec);
    // restriction is the synthesized harmonic function
    auto u = synthesize(dom, spec);
    for (int v = 0; v < dom.mesh->vertex_count(); ++v)
      if (dom.mask.in_domain(v)) CHECK(rep.extended[v] == doctest::Approx(u[v]).epsilon(1e-9));
    // trace comes back exactly
    auto back = trace(dom, rep.extended, seq.size());
    CHECK(back.a == doctest::Approx(spec.a).epsilon(1e-9));
    CHECK(back.b == doctest::Approx(spec.b).epsilon(1e-9));
    for (const auto& [w, c] : back.coeffs) {
      auto it = spec.coeffs.find(w);
      CHECK(c == doctest::Approx(it == spec.coeffs.end() ? 0.0 : it->second)
                     .epsilon(1e-9)
                     .scale(1.0));
    }
    CHECK(rep.upper_energy == doctest::Approx(graph_energy(u, &dom.mask)).epsilon(1e-9));
    worst = std::max(worst, rep.ratio);
  }
  CHECK(worst > 1.0);
  CHECK(worst < 4.0 * std::pow(10.0 / 3.0, 2));
}

TEST_CASE("trace operator") {
  DyadicSequence seq({1, 3, 5}, 3);
  Domain dom(seq, 6);
  std::mt19937_64 rng(77);
  auto spec = random_spectrum(rng, seq, 5);
  auto u = synthesize(dom, spec);
  for (int depth = 1; depth <= seq.size(); ++depth) {
    auto tr = trace(dom, u, depth);
    CHECK(tr.a == doctest::Approx(spec.a).epsilon(1e-10));
    for (const auto& [w, c] : tr.coeffs) {
      REQUIRE(w.length() < depth);
      auto it = spec.coeffs.find(w);
      CHECK(c == doctest::Approx(it == spec.coeffs.end() ? 0.0 : it->second)
                     .epsilon(1e-10)
                     .scale(1.0));
    }
  }
  MeshFunction cst(*dom.mesh, 3.3);
  auto tc = trace(dom, cst, seq.size());
  CHECK(tc.b == doctest::Approx(3.3));
  for (const auto& [w, c] : tc.coeffs) CHECK(c == doctest::Approx(0.0));
  CHECK_THROWS(trace(dom, u, seq.size() + 1));

  // Thm-4.2 direction: the Eq-2.29 quantity of the trace is controlled
  // by the upper energy, with a stable constant
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    auto s = random_spectrum(rng, seq, 4);
    auto v = synthesize(dom, s);
    double e = graph_energy(v, &dom.mask);
    if (e < 1e-12) continue;
    worst = std::max(worst, energy_report(seq, trace(dom, v, seq.size())).estimate_2_29 / e);
  }
  CHECK(worst > 0.0);
  CHECK(worst < 2.0);  // comparable to the energy with a small constant
}

TEST_CASE("glue identity and strips") {
  DyadicSequence seq({1, 3, 5}, 3);
  Domain dom(seq, 6);
  const int t = line_threshold(*dom.mesh, seq);

  MeshFunction ca(*dom.mesh, 1.25), cb(*dom.mesh, 1.25);
  auto gc = glue(dom, ca, cb);
  CHECK(gc.report.total == doctest::Approx(0.0));
  for (double s : gc.report.strips) CHECK(s == doctest::Approx(0.0));

  // h0 glued with zero below
  auto h0 = eval_h0(dom);
  MeshFunction zero(*dom.mesh);
  auto g = glue(dom, h0, zero);
  CHECK(g.report.total ==
        doctest::Approx(g.report.upper + g.report.lower).epsilon(1e-12));
  CHECK(g.report.lower == doctest::Approx(0.0));
  REQUIRE((int)g.report.strips.size() == seq.size());
  for (size_t m = 1; m < g.report.strips.size(); ++m)
    CHECK(g.report.strips[m] < g.report.strips[m - 1]);

  // coarse-level partition: total = B+ + B- + strip, strip cells = 2^m
  // (at m = K the strip cells sit entirely below the line, so the
  // straddle classification only applies for m < K)
  for (int m = 1; m < seq.size(); ++m) {
    auto split = coarse_split(g.combined, t, seq.exponent(m - 1));
    CHECK(split.strip_cells == (1 << m));
    CHECK(split.strip == doctest::Approx(g.report.strips[(size_t)m - 1]).epsilon(1e-12));
  }

  // matched harmonic pair: each coarse strip energy is controlled by the
  // fine energy living in the same strip cells (the 4.10-type bound)
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 5; ++trial) {
    auto spec = random_spectrum(rng, seq, 3);
    auto up = synthesize(dom, spec);
    auto low = minimal_lower_extension(dom, up);
    auto gm = glue(dom, up, low);
    CHECK(gm.report.total ==
          doctest::Approx(gm.report.upper + gm.report.lower).epsilon(1e-12));
    for (double s : gm.report.strips) CHECK(s >= 0.0);
    for (int m = 1; m <= seq.size(); ++m) {
      double fine = strip_fine_energy(gm.combined, dom, m);
      CHECK(gm.report.strips[(size_t)m - 1] <= 8.0 * fine + 1e-12);
    }
  }

  // mismatched traces are rejected
  MeshFunction bad(*dom.mesh, 1.0);
  CHECK_THROWS(glue(dom, h0, bad));
}

TEST_CASE("obstruction growth") {
  auto rows = obstruction_experiment(7);
  REQUIRE((int)rows.size() == 6);
  CHECK(rows[0].n == 2);

  // extension can only add energy
  DyadicSequence s2({1, 2}, 2);
  CHECK(rows[0].e_min >= energy_h1(s2) - 1e-9);

  for (size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].e_min > rows[i - 1].e_min);
  // E_min(N+1)/E_min(N) for N = 3..6 trends toward 5/3
  for (size_t i = 2; i < rows.size(); ++i) {
    CHECK(rows[i].ratio > 1.4);
    CHECK(rows[i].ratio < 2.0);
  }

  // the minimizer is harmonic below the line
  DyadicSequence seq({1, 2, 3}, 3);
  Domain dom(seq, 4);
  auto ext = minimal_lower_extension(dom, eval_h1(dom));
  DomainMask low = mask_lower(*dom.mesh, seq);
  std::vector<double> res((size_t)dom.mesh->vertex_count(), 0.0);
  for (int c : low.domain_cells) {
    const auto& cell = dom.mesh->cells[(size_t)c];
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        res[(size_t)cell[a]] += ext[cell[a]] - ext[cell[b]];
        res[(size_t)cell[b]] += ext[cell[b]] - ext[cell[a]];
      }
  }
  auto bv = boundary_vertices(dom);
  for (int v = 0; v < dom.mesh->vertex_count(); ++v) {
    if (low.role[(size_t)v] == VertexRole::Exterior) continue;
    if (std::find(bv.begin(), bv.end(), v) != bv.end()) continue;
    CHECK(std::fabs(res[(size_t)v]) < 1e-8);
  }
}

TEST_CASE("nonconsecutive precondition") {
  DyadicSequence bad({1, 2, 3}, 3);  // run touches the truncation depth
  Domain dom(bad, 5);
  CHECK_THROWS(extend_basis(dom, Word()));
  DyadicSequence coarse({1, 3}, 2);
  Domain shallow(coarse, 3);  // level n_K, too coarse for the block
  CHECK_THROWS(extend_basis(shallow, Word::parse("1")));
}
