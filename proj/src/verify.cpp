#include "gasketbvp/verify.hpp"

#include <chrono>
#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

#include "gasketbvp/extension.hpp"
#include "gasketbvp/flux.hpp"
#include "gasketbvp/greens.hpp"

namespace gasketbvp {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void expect(CheckReport& r, bool cond, const std::string& what) {
  r.details.push_back((cond ? "ok: " : "FAIL: ") + what);
  if (!cond) r.passed = false;
}

DyadicSequence random_seq(std::mt19937_64& rng, int len, int max_gap = 4) {
  std::vector<int> exps;
  int n = 0;
  for (int k = 0; k < len; ++k) {
    n += 1 + static_cast<int>(rng() % static_cast<unsigned>(max_gap));
    exps.push_back(n);
  }
  return DyadicSequence(exps, len);
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

// graph energy of u restricted to the level-l vertex set, over Omega_x
double restricted_energy(const MeshFunction& u, const DyadicSequence& seq, int l) {
  GasketMesh coarse = build_mesh(l);
  MeshFunction v(coarse);
  const int s = u.mesh->level - l;
  for (int i = 0; i < coarse.vertex_count(); ++i) {
    auto c = coarse.coords[static_cast<size_t>(i)];
    v[i] = u[u.mesh->vertex_at(c[0] << s, c[1] << s)];
  }
  DomainMask mask = mask_upper(coarse, seq);
  return graph_energy(v, &mask);
}

CheckReport criterion_ratios(std::uint64_t seed, int trials) {
  CheckReport r{"ratio identities", true, {}};
  std::mt19937_64 rng(seed);
  const auto start = std::chrono::steady_clock::now();
  double worst_sum = 0.0, worst_26 = 0.0;
  bool range_ok = true, sum_ok = true, res_ok = true;
  for (int t = 0; t < trials; ++t) {
    auto seq = random_seq(rng, 2 + static_cast<int>(rng() % 19));
    auto rt = ratio_triple(seq);
    range_ok = range_ok && rt.m0 >= 0.0 && rt.m0 <= 0.3 + 1e-12;
    worst_sum = std::max(worst_sum, std::fabs(rt.m0 + rt.m1 + rt.m2 - 1.0));
    sum_ok = sum_ok && worst_sum < 1e-12;
    if (seq.size() >= 3) {
      double res = consistency_2_26(seq);
      double err = m0(seq).error_bound;
      worst_26 = std::max(worst_26, res / std::max(err, 1e-300));
      res_ok = res_ok && res <= 10.0 * err + 1e-13;
    }
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(r, range_ok, "m0 in [0, 3/10] over " + std::to_string(trials) + " sequences");
  expect(r, sum_ok, "m0+m1+m2 = 1, worst residual " + fmt(worst_sum));
  expect(r, res_ok, "Eq-2.26 residual <= 10x truncation error, worst ratio " + fmt(worst_26));
  expect(r, secs < 1.0, "runtime " + fmt(secs) + " s < 1 s");
  return r;
}

CheckReport criterion_goldens() {
  CheckReport r{"golden values at x = 1", true, {}};
  auto deep = DyadicSequence::periodic({1}, 40);
  const double m0p = m0_exact_periodic({1});
  expect(r, std::fabs(m0p - 0.3) < 1e-10, "exact-periodic m0 = 3/10 (" + fmt(m0p) + ")");
  expect(r, std::fabs(m0(deep).value - 0.3) < 1e-10, "deep-truncation m0 = 3/10");
  auto rt = ratio_triple_from_m0(m0p);
  expect(r, std::fabs(rt.m1 - 91.0 / 160.0) < 1e-10, "m1 = 91/160");
  expect(r, std::fabs(rt.m2 - 21.0 / 160.0) < 1e-10, "m2 = 21/160");
  expect(r, std::fabs(energy_h0(deep) - 7.0 / 3.0) < 1e-10, "E(h0) = 7/3");
  expect(r, std::fabs(energy_h1(deep) - 35.0 / 8.0) < 1e-10, "E(h1) = 35/8");
  expect(r, std::fabs(energy_h_omega(deep, Word({1})) - 175.0 / 12.0) < 1e-10,
         "E(h_omega), |omega| = 1, = 175/12");
  expect(r, std::fabs(dtn_multiplier(deep, 0) - 35.0 / 8.0) < 1e-10, "DtN multiplier(0) = 35/8");
  return r;
}

CheckReport criterion_oracle(std::uint64_t seed) {
  CheckReport r{"oracle equivalence", true, {}};
  std::mt19937_64 rng(seed + 1);
  const auto start = std::chrono::steady_clock::now();
  double worst = 0.0;
  for (int t = 0; t < 20; ++t) {
    std::vector<int> exps;
    int n = 0;
    const int len = 2 + static_cast<int>(rng() % 3);
    for (int k = 0; k < len; ++k) exps.push_back(n += 1 + static_cast<int>(rng() % 2));
    while (exps.back() > 6) {  // keep the mesh level at n_K + 4 <= 10
      for (auto& e : exps) e = std::max(1, e - 1);
      for (size_t k = 1; k < exps.size(); ++k)
        if (exps[k] <= exps[k - 1]) exps[k] = exps[k - 1] + 1;
    }
    DyadicSequence seq(exps, len);
    Domain dom(seq, exps.back() + 4);
    auto u = synthesize(dom, random_spectrum(rng, seq, 4));
    MeshFunction bc(*dom.mesh);
    for (int v = 0; v < dom.mesh->vertex_count(); ++v)
      if (dom.mask.role[static_cast<size_t>(v)] == VertexRole::Boundary) bc[v] = u[v];
    auto oracle = solve_dirichlet_graph(dom.mask, bc);
    double scale = 1.0, err = 0.0;
    for (int v = 0; v < dom.mesh->vertex_count(); ++v) {
      if (!dom.mask.in_domain(v)) continue;
      scale = std::max(scale, std::fabs(u[v]));
      err = std::max(err, std::fabs(u[v] - oracle[v]));
    }
    worst = std::max(worst, err / scale);
  }
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(r, worst < 1e-7, "synthesized harmonics match graph solve, worst sup " + fmt(worst));
  expect(r, secs < 60.0, "runtime " + fmt(secs) + " s < 60 s");
  return r;
}

CheckReport criterion_energies() {
  CheckReport r{"energy consistency", true, {}};
  const std::vector<DyadicSequence> seqs = {DyadicSequence({1, 3, 5}, 3),
                                            DyadicSequence({2, 3, 6}, 3),
                                            DyadicSequence({1, 2, 4, 5}, 4)};
  bool mono = true, close = true;
  for (const auto& seq : seqs) {
    const int L = seq.exponents().back() + 5;
    Domain dom(seq, L);
    const std::vector<std::pair<MeshFunction, double>> cases = {
        {eval_h0(dom), energy_h0(seq)},
        {eval_h1(dom), energy_h1(seq)},
        {eval_h_omega(dom, Word({1})), energy_h_omega(seq, Word({1}))}};
    for (const auto& [u, closed] : cases) {
      double prev = -1.0, e = 0.0;
      for (int l = seq.exponents().back(); l <= L; ++l) {
        e = restricted_energy(u, seq, l);
        mono = mono && e >= prev - 1e-9;
        prev = e;
      }
      close = close && std::fabs(e - closed) / closed < 0.01;
    }
  }
  expect(r, mono, "restricted graph energies nondecreasing in level");
  expect(r, close, "level n_K+5 energies within 1% of closed forms");

  // Eq-2.31 orthogonality of the basis at truncation
  DyadicSequence seq({1, 3, 5}, 3);
  Domain dom(seq, 7);
  std::vector<MeshFunction> basis = {eval_h0(dom), eval_h_omega(dom, Word()),
                                     eval_h_omega(dom, Word({1})),
                                     eval_h_omega(dom, Word({2, 2}))};
  double cross = 0.0;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j) {
      double b = graph_energy_bilinear(basis[i], basis[j], &dom.mask);
      double n = std::sqrt(graph_energy(basis[i], &dom.mask) * graph_energy(basis[j], &dom.mask));
      cross = std::max(cross, std::fabs(b) / n);
    }
  expect(r, cross < 1e-8, "relative cross-energies vanish, worst " + fmt(cross));
  return r;
}

CheckReport criterion_dtn(std::uint64_t seed) {
  CheckReport r{"DtN and Gauss-Green", true, {}};
  std::mt19937_64 rng(seed + 2);
  DyadicSequence seq({1, 3, 5, 6}, 4);
  Domain dom(seq, 7);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);
  double worst = 0.0;
  for (int t = 0; t < 10; ++t) {
    auto spec = random_spectrum(rng, seq, 4);
    MeshFunction v(*dom.mesh);
    for (auto& val : v.values) val = unif(rng);
    worst = std::max(worst, gauss_green_residual(dom, spec, v));
  }
  expect(r, worst < 1e-5, "Eq-3.5 residual, worst " + fmt(worst));

  double worst_mult = 0.0;
  for (int t = 0; t < 50; ++t) {
    auto s = random_seq(rng, 5);
    const int m = static_cast<int>(rng() % 4);
    std::vector<int> letters(static_cast<size_t>(m));
    for (auto& l : letters) l = 1 + static_cast<int>(rng() % 2);
    const double mult = dtn_multiplier(s, m), e = energy_h_omega(s, Word(letters));
    worst_mult = std::max(worst_mult, std::fabs(mult - e) / e);
  }
  expect(r, worst_mult < 1e-9, "DtN coefficient equals E(h_omega), worst " + fmt(worst_mult));

  double worst_fd = 0.0;
  for (const std::string& ws : {"", "1", "21"}) {
    Word w = Word::parse(ws);
    auto hw = eval_h_omega(dom, w);
    for (int m = w.length() + 1; m <= seq.size(); ++m) {
      auto fd = finite_difference_flux(hw, seq, m);
      BoundaryFlux only;
      only.coeffs[w] = dtn_multiplier(seq, w.length());
      auto cf = flux_piecewise(only, seq, m);
      for (size_t i = 0; i < fd.size(); ++i)
        worst_fd = std::max(worst_fd, std::fabs(fd[i] - cf[i]));
    }
  }
  expect(r, worst_fd < 1e-9, "finite-difference flux level-independent, worst " + fmt(worst_fd));
  return r;
}

CheckReport criterion_extension(std::uint64_t seed) {
  CheckReport r{"extension operator", true, {}};
  // n_m = 2m - 1 family: the empty-word extension adds exactly 8 (5/3)^2
  DyadicSequence arith = DyadicSequence::arithmetic(1, 2, 3);
  Domain dom(arith, 7);
  auto ext = extend_one_minus_h0(dom);
  const double added = graph_energy(ext) - graph_energy(ext, &dom.mask);
  const double golden = 8.0 * std::pow(5.0 / 3.0, 2);
  expect(r, std::fabs(added - golden) < 1e-9 * golden,
         "empty-word added energy = 8 (5/3)^2 (" + fmt(added) + ")");
  expect(r, std::fabs(extension_added_energy(arith, 0) - golden) < 1e-12, "closed form agrees");

  std::mt19937_64 rng(seed + 3);
  double worst_ratio = 0.0;
  int samples = 0;
  while (samples < 100) {
    const int len = 3 + static_cast<int>(rng() % 2);
    std::vector<int> exps{1 + static_cast<int>(rng() % 3)};
    int prevgap = 2;
    for (int k = 1; k < len; ++k) {
      int g = (prevgap >= 2 && k + 1 < len && (rng() % 2)) ? 1 : 2 + static_cast<int>(rng() % 2);
      prevgap = g;
      exps.push_back(exps.back() + g);
    }
    DyadicSequence seq(exps, len);
    if (!nonconsecutive_bound(seq)) continue;
    ++samples;
    const int m = static_cast<int>(rng() % static_cast<unsigned>(len - 1));
    worst_ratio = std::max(worst_ratio,
                           extension_added_energy(seq, m) /
                               (std::pow(2.0, m) * std::pow(5.0 / 3.0, seq.exponent(m))));
  }
  expect(r, worst_ratio > 0.0 && worst_ratio <= 4.0 * std::pow(10.0 / 3.0, 2) + 1e-9,
         "Eq-4.15 bracket with C(3) = 4 (10/3)^2, worst " + fmt(worst_ratio));

  auto rows = obstruction_experiment(7);
  bool obs = true;
  for (const auto& row : rows)
    if (row.n >= 4 && row.n <= 7) obs = obs && row.ratio >= 1.4 && row.ratio <= 2.0;
  expect(r, obs, "obstruction growth ratios in [1.4, 2.0] for N = 3..6");
  return r;
}

CheckReport criterion_hausdorff() {
  CheckReport r{"Hausdorff dimension", true, {}};
  const double phi = std::log2((1.0 + std::sqrt(5.0)) / 2.0);
  expect(r, std::fabs(hausdorff_dimension(2) - phi) < 1e-10,
         "N = 2 root = log2((1+sqrt(5))/2)");
  bool inc = true;
  double prev = 0.0;
  for (int n = 2; n <= 50; ++n) {
    const double d = hausdorff_dimension(n);
    inc = inc && d >= prev - 1e-9;
    prev = d;
  }
  expect(r, inc, "nondecreasing in N");
  expect(r, hausdorff_dimension(50) > 0.999, "dimension(50) = " + fmt(prev) + " > 0.999");
  return r;
}

CheckReport criterion_green(std::uint64_t seed) {
  CheckReport r{"Green's function", true, {}};
  const auto start = std::chrono::steady_clock::now();
  std::mt19937_64 rng(seed + 4);

  double worst_id = 0.0;
  for (int t = 0; t < 20; ++t) {
    auto seq = random_seq(rng, 4);
    for (int l = 1; l < seq.size(); ++l) {
      const double m = m0_truncated(l >= 2 ? shift_normalized(seq, l - 1) : seq);
      const double scale = std::pow(5.0 / 3.0, seq.exponent(l - 1));
      const double diag = g_domain_diag(seq, l), off = g_domain_neighbor(seq, l);
      worst_id = std::max(worst_id, std::fabs(scale * ((1.0 + m) / m * diag - off) - 1.0));
      worst_id = std::max(worst_id, std::fabs(scale * ((1.0 + m) / m * off - diag)));
    }
  }
  expect(r, worst_id < 1e-10, "Eq-5.17/5.18 identities, worst " + fmt(worst_id));

  double worst_rep = 0.0;
  for (const auto& [seq, m] : std::vector<std::pair<DyadicSequence, int>>{
           {DyadicSequence::periodic({1}, 5), 3}, {DyadicSequence({2, 3, 5}, 3), 2}}) {
    Domain dom(seq, 6);
    GreenOperator op(dom, m);
    auto fam = level_splines(dom, m);
    std::vector<int> interior;
    for (int v = 0; v < dom.mesh->vertex_count(); ++v)
      if (dom.mask.role[static_cast<size_t>(v)] == VertexRole::Interior) interior.push_back(v);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    for (int i = 0; i < 3; ++i) {
      const int t = interior[rng() % interior.size()];
      auto slice = op.kernel_slice(t);
      for (int trial = 0; trial < 4; ++trial) {
        MeshFunction v(*dom.mesh);
        for (auto& val : v.values) val = unif(rng);
        v[dom.q0()] = 0.0;
        for (int b : boundary_vertices(dom)) v[b] = 0.0;
        double rhs = 0.0;
        for (const auto& [z, sp] : fam) rhs += v[z] * sp[t];
        const double lhs = graph_energy_bilinear(slice, v, &dom.mask);
        worst_rep = std::max(worst_rep, std::fabs(lhs - rhs) / std::max(1.0, std::fabs(rhs)));
      }
    }
  }
  expect(r, worst_rep < 1e-7, "Eq-5.11 reproducing identity, worst " + fmt(worst_rep));

  DyadicSequence one = DyadicSequence::periodic({1}, 6);
  Domain dom(one, 7);
  GreenOperator op(dom, 4);
  MeshFunction force(*dom.mesh, 1.0);
  auto u = op.solve(force);
  MeshFunction zero(*dom.mesh);
  auto oracle = solve_dirichlet_graph(dom.mask, zero, &force);
  double scale = 0.0, err = 0.0;
  for (int v = 0; v < dom.mesh->vertex_count(); ++v) {
    if (!dom.mask.in_domain(v)) continue;
    scale = std::max(scale, std::fabs(oracle[v]));
    err = std::max(err, std::fabs(u[v] - oracle[v]));
  }
  expect(r, err / scale < 0.02, "F = 1 solve vs oracle, rel sup " + fmt(err / scale));

  auto flux = solution_flux_bound(op, force);
  bool decay = true, bounded = true;
  for (size_t l = 0; l + 1 < flux.level_sup.size(); ++l)
    decay = decay && flux.level_sup[l + 1] < 0.95 * flux.level_sup[l];
  for (size_t l = 0; l < flux.level_sup.size(); ++l)
    bounded = bounded && flux.level_sup[l] <= 10.0 * flux.level_bound[l];
  expect(r, decay && bounded, "Eq-5.21 flux bound with per-level decay");

  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  expect(r, secs < 120.0, "runtime " + fmt(secs) + " s < 120 s");
  return r;
}

CheckReport check_glue(std::uint64_t seed) {
  CheckReport r{"glue", true, {}};
  DyadicSequence seq({1, 3}, 2);
  Domain dom(seq, 5);
  auto h0 = eval_h0(dom);
  MeshFunction lower(*dom.mesh);
  auto g = glue(dom, h0, lower);
  expect(r, std::fabs(g.report.total - g.report.upper - g.report.lower) < 1e-10,
         "energy splits across the cut");
  bool strips = true;
  for (size_t m = 1; m < g.report.strips.size(); ++m)
    strips = strips && g.report.strips[m] <= g.report.strips[m - 1] + 1e-12;
  expect(r, strips, "strip energies decay for h0 data");
  bool threw = false;
  MeshFunction bad(*dom.mesh, 1.0);
  try {
    glue(dom, h0, bad);
  } catch (const std::invalid_argument&) {
    threw = true;
  }
  expect(r, threw, "mismatched traces rejected");

  std::mt19937_64 rng(seed + 5);
  DyadicSequence seq2({1, 3, 5}, 3);
  Domain dom2(seq2, 6);
  bool round = true;
  for (int t = 0; t < 5; ++t) {
    auto spec = random_spectrum(rng, seq2, 4);
    auto back = boundary_spectrum(dom2, synthesize(dom2, spec));
    round = round && std::fabs(back.a - spec.a) < 1e-9 && std::fabs(back.b - spec.b) < 1e-9;
    for (const auto& [w, c] : spec.coeffs)
      round = round && std::fabs(back.coeffs.at(w) - c) < 1e-9;
  }
  expect(r, round, "trace/spectrum round trip");
  return r;
}

}  // namespace

std::vector<std::string> verify_group_names() {
  return {"ratios", "energies", "dtn", "glue", "extension", "green"};
}

CheckReport check_group(const std::string& group, const VerifyOptions& opts) {
  auto merge = [&group](std::vector<CheckReport> parts) {
    CheckReport out{group, true, {}};
    for (auto& p : parts) {
      out.passed = out.passed && p.passed;
      for (auto& d : p.details) out.details.push_back(p.name + ": " + d);
    }
    return out;
  };
  if (group == "ratios")
    return merge({criterion_ratios(opts.seed, opts.trials > 0 ? opts.trials : 1000),
                  criterion_goldens()});
  if (group == "energies") return merge({criterion_energies(), criterion_oracle(opts.seed)});
  if (group == "dtn") return merge({criterion_dtn(opts.seed)});
  if (group == "glue") return merge({check_glue(opts.seed)});
  if (group == "extension")
    return merge({criterion_extension(opts.seed), criterion_hausdorff()});
  if (group == "green") return merge({criterion_green(opts.seed)});
  throw std::invalid_argument("unknown check group: " + group);
}

std::vector<CheckReport> acceptance_suite(std::uint64_t seed) {
  return {criterion_ratios(seed, 1000), criterion_goldens(), criterion_oracle(seed),
          criterion_energies(),         criterion_dtn(seed), criterion_extension(seed),
          criterion_hausdorff(),        criterion_green(seed)};
}

}  // namespace gasketbvp
